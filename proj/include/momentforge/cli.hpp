#pragma once

namespace momentforge {

int run_cli(int argc, char** argv);

}  // namespace momentforge
