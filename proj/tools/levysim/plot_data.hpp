#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace levysim {

// Reads a completed run directory and writes tidy CSVs into <dir>/plot:
//   histograms.csv    t,bin_left,bin_right,count
//   alpha_n.csv       n,x,alpha_n            (schedule runs)
//   exceptional_sets.csv                      (schedule runs)
//   symbol_shells.csv id,shell,value
//   martingale_z.csv  generator,f,h,z,pass
// Throws ConfigError when the directory holds no run artifacts.
std::vector<std::string> emit_plot_data(const std::filesystem::path& dir);

}  // namespace levysim
