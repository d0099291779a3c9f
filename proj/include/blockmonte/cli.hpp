#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blockmonte {

/// Entry point of the `blockmonte` tool. `args` excludes the program name.
///
///   estimate <variant> [--seed N] [--trials N] [--param key=value]...
///            [--out DIR] [--format jsonl,csv,svg,txt] [--from-counts A,B]
///   run <manifest> [--out DIR]
///   raster circle --radius N [--txt]
///   oracle <name> [args...]
///
/// Returns the exit status: 0 success, 1 degenerate result, 2 invalid input.
/// The master seed defaults to $BLOCKMONTE_SEED, then 0; --seed wins.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blockmonte
