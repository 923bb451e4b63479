#include "levysim/plot_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "levysim/config.hpp"
#include "levytype/path_ensemble.hpp"

namespace levysim {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double quantile(std::vector<double>& v, double p) {
    const auto k = static_cast<std::size_t>(std::floor(p * static_cast<double>(v.size() - 1)));
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
}

void write_histograms(const levytype::PathEnsemble& e, int bins, std::ostream& os) {
    os.precision(17);
    os << "t,bin_left,bin_right,count\n";
    constexpr int kSlices = 4;
    for (int i = 0; i <= kSlices; ++i) {
        const std::size_t k = (e.steps * static_cast<std::size_t>(i)) / kSlices;
        std::vector<double> xs(e.paths);
        for (std::size_t p = 0; p < e.paths; ++p) xs[p] = e.at(p, k);
        // Heavy tails: bin the central 99% and drop the rest.
        auto sorted = xs;
        double lo = quantile(sorted, 0.005), hi = quantile(sorted, 0.995);
        if (!(hi > lo)) {
            lo -= 0.5;
            hi += 0.5;
        }
        std::vector<std::size_t> count(static_cast<std::size_t>(bins), 0);
        const double width = (hi - lo) / bins;
        for (double x : xs) {
            if (x < lo || x > hi) continue;
            auto b = static_cast<std::size_t>((x - lo) / width);
            count[std::min(b, count.size() - 1)]++;
        }
        for (int b = 0; b < bins; ++b)
            os << e.time(k) << ',' << lo + b * width << ',' << lo + (b + 1) * width << ','
               << count[static_cast<std::size_t>(b)] << '\n';
    }
}

}  // namespace

std::vector<std::string> emit_plot_data(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw ConfigError("plot-data: " + dir.string() + " is not a directory");
    if (!fs::exists(dir / "manifest.json"))
        throw ConfigError("plot-data: " + dir.string() + " has no manifest.json (not a completed run)");

    int bins = OutputConfig{}.histogram_bins;
    {
        std::ifstream in(dir / "manifest.json");
        json j;
        try {
            in >> j;
            bins = parse_config(j).output.histogram_bins;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("plot-data: unreadable manifest: ") + e.what());
        }
    }

    const fs::path out = dir / "plot";
    fs::create_directories(out);
    std::vector<std::string> written;

    if (fs::exists(dir / "ensemble.bin")) {
        std::ifstream in(dir / "ensemble.bin", std::ios::binary);
        const auto e = levytype::read_binary(in);
        std::ofstream os(out / "histograms.csv");
        write_histograms(e, bins, os);
        written.push_back("plot/histograms.csv");
    }
    for (const auto& [from, to] : {std::pair{"alpha_n.csv", "alpha_n.csv"},
                                   std::pair{"exceptional_sets.csv", "exceptional_sets.csv"},
                                   std::pair{"shells.csv", "symbol_shells.csv"}}) {
        if (!fs::exists(dir / from)) continue;
        fs::copy_file(dir / from, out / to, fs::copy_options::overwrite_existing);
        written.push_back(std::string("plot/") + to);
    }

    const bool primary = fs::exists(dir / "martingale.csv");
    const bool control = fs::exists(dir / "martingale_control.csv");
    if (primary || control) {
        std::ofstream os(out / "martingale_z.csv");
        os << "generator,f,h,z,pass\n";
        for (const auto& [name, label] : {std::pair{"martingale.csv", "model"},
                                          std::pair{"martingale_control.csv", "control"}}) {
            std::ifstream in(dir / name);
            if (!in) continue;
            std::string line;
            std::getline(in, line);  // header: f,h,t_start,t_end,defect,stderr,z,paths,pass
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                const auto c = split(line);
                if (c.size() != 9) throw ConfigError(std::string("plot-data: malformed row in ") + name);
                os << label << ',' << c[0] << ',' << c[1] << ',' << c[6] << ',' << c[8] << '\n';
            }
        }
        written.push_back("plot/martingale_z.csv");
    }
    return written;
}

}  // namespace levysim
