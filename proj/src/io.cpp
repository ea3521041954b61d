#include "displab/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace displab {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void put_u64(std::ofstream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::ifstream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void put_f64(std::ofstream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(os, bits);
}

double get_f64(std::ifstream& is) {
    std::uint64_t bits = get_u64(is);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    for (size_t i = 0; i < header.size(); ++i)
        os << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << fmt(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
}

void write_samples_csv(const std::string& path,
                       const std::vector<OscIntegralSample>& samples) {
    std::vector<std::vector<double>> rows;
    rows.reserve(samples.size());
    for (const auto& s : samples)
        rows.push_back({s.t, s.x, static_cast<double>(s.k), s.s,
                        s.value.real(), s.value.imag(), s.abs_error});
    write_csv(path, {"t", "x", "k", "s", "re", "im", "abs_error"}, rows);
}

void write_grid(const std::string& path, const GridFunction& g) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path);
    put_u64(os, static_cast<std::uint64_t>(g.n));
    put_u64(os, static_cast<std::uint64_t>(g.resolution));
    put_f64(os, g.extent);
    for (const auto& v : g.samples) {
        put_f64(os, v.real());
        put_f64(os, v.imag());
    }
}

GridFunction read_grid(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    int n = static_cast<int>(get_u64(is));
    int res = static_cast<int>(get_u64(is));
    double extent = get_f64(is);
    GridFunction g = GridFunction::zeros(n, res, extent);
    for (auto& v : g.samples) {
        double re = get_f64(is);
        double im = get_f64(is);
        v = {re, im};
    }
    if (!is) throw std::runtime_error("truncated grid file " + path);
    return g;
}

void write_svg_loglog(const std::string& path,
                      const std::vector<std::pair<double, double>>& series,
                      const std::string& title) {
    const int W = 640, H = 480, M = 56;
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (auto& [x, y] : series) {
        if (x <= 0 || y <= 0) continue;
        xlo = std::min(xlo, std::log10(x));
        xhi = std::max(xhi, std::log10(x));
        ylo = std::min(ylo, std::log10(y));
        yhi = std::max(yhi, std::log10(y));
    }
    if (xhi <= xlo) xhi = xlo + 1;
    if (yhi <= ylo) yhi = ylo + 1;
    auto px = [&](double lx) { return M + (lx - xlo) / (xhi - xlo) * (W - 2 * M); };
    auto py = [&](double ly) {
        return H - M - (ly - ylo) / (yhi - ylo) * (H - 2 * M);
    };
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W
       << "' height='" << H << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    os << "<text x='" << W / 2 << "' y='24' text-anchor='middle' "
          "font-family='sans-serif' font-size='14'>"
       << title << "</text>\n";
    os << "<rect x='" << M << "' y='" << M << "' width='" << W - 2 * M
       << "' height='" << H - 2 * M << "' fill='none' stroke='black'/>\n";
    os << "<polyline fill='none' stroke='steelblue' stroke-width='1.5' "
          "points='";
    for (auto& [x, y] : series) {
        if (x <= 0 || y <= 0) continue;
        os << px(std::log10(x)) << "," << py(std::log10(y)) << " ";
    }
    os << "'/>\n</svg>\n";
}

}  // namespace displab
