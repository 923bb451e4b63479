#include "levytype/path_ensemble.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "levytype/errors.hpp"

namespace levytype {

namespace {

constexpr char kMagic[8] = {'L', 'V', 'T', 'P', 'A', 'T', 'H', 'S'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put_le(std::ostream& os, T value) {
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    os.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
    std::array<unsigned char, sizeof(T)> bytes;
    if (!is.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) throw InputError("ensemble dump: truncated file");
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

}  // namespace

PathEnsemble::PathEnsemble(double dt_, std::size_t steps_, std::size_t paths_, std::uint64_t seed_)
    : dt(dt_), steps(steps_), paths(paths_), seed(seed_), states(paths_ * (steps_ + 1), 0.0) {}

std::size_t PathEnsemble::step_of(double t) const {
    const double k = std::round(t / dt);
    if (k < 0.0 || k > static_cast<double>(steps) || std::abs(k * dt - t) > 1e-9 * std::max(1.0, std::abs(t))) {
        std::ostringstream msg;
        msg << "ensemble: time " << t << " is not on the grid (dt = " << dt << ", M = " << steps << ")";
        throw InputError(msg.str());
    }
    return static_cast<std::size_t>(k);
}

bool PathEnsemble::point_started(double* x) const {
    if (paths == 0) return false;
    const double x0 = initial(0);
    for (std::size_t p = 1; p < paths; ++p)
        if (initial(p) != x0) return false;
    if (x) *x = x0;
    return true;
}

void write_binary(const PathEnsemble& e, std::ostream& os) {
    os.write(kMagic, sizeof(kMagic));
    put_le<std::uint32_t>(os, kVersion);
    put_le<std::uint64_t>(os, e.steps);
    put_le<std::uint64_t>(os, e.paths);
    put_le<double>(os, e.dt);
    put_le<std::uint64_t>(os, e.seed);
    if constexpr (std::endian::native == std::endian::little) {
        os.write(reinterpret_cast<const char*>(e.states.data()),
                 static_cast<std::streamsize>(e.states.size() * sizeof(double)));
    } else {
        for (double v : e.states) put_le<double>(os, v);
    }
    if (!os) throw Error("ensemble dump: write failed");
}

PathEnsemble read_binary(std::istream& is) {
    char magic[8];
    if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(magic)) != 0)
        throw InputError("ensemble dump: bad magic");
    const auto version = get_le<std::uint32_t>(is);
    if (version != kVersion) throw InputError("ensemble dump: unsupported version " + std::to_string(version));
    const auto steps = get_le<std::uint64_t>(is);
    const auto paths = get_le<std::uint64_t>(is);
    const auto dt = get_le<double>(is);
    const auto seed = get_le<std::uint64_t>(is);
    PathEnsemble e(dt, steps, paths, seed);
    for (double& v : e.states) v = get_le<double>(is);
    return e;
}

void write_csv(const PathEnsemble& e, std::ostream& os, std::size_t path_stride, std::size_t step_stride) {
    if (path_stride == 0 || step_stride == 0) throw InputError("ensemble csv: strides must be positive");
    os << "path_id,t,x\n";
    os.precision(17);
    for (std::size_t p = 0; p < e.paths; p += path_stride) {
        for (std::size_t k = 0; k <= e.steps; k += step_stride) os << p << ',' << e.time(k) << ',' << e.at(p, k) << '\n';
        if (e.steps % step_stride != 0) os << p << ',' << e.horizon() << ',' << e.at(p, e.steps) << '\n';
    }
}

}  // namespace levytype
