#pragma once

#include <filesystem>
#include <ostream>

#include "config.hpp"

namespace opdeloc::cli {

struct RunContext {
    Config config;
    std::filesystem::path out_dir;
    std::ostream& log;
};

int cmd_ck_curves(const RunContext& ctx);
int cmd_ratio_scaling(const RunContext& ctx);
int cmd_battery(const RunContext& ctx);
int cmd_validate_star(const RunContext& ctx);
int cmd_validate_oracle(const RunContext& ctx);

}  // namespace opdeloc::cli
