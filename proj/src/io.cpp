#include "uot/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace uot {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << std::setprecision(17);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

void save_raster(const std::string& path, const GridDensity& g) {
    std::ofstream out = open_out(path);
    for (int iy = 0; iy < g.ny(); ++iy) {
        for (int ix = 0; ix < g.nx(); ++ix) {
            if (ix) out << ',';
            out << g.value(ix, iy);
        }
        out << '\n';
    }
    const Domain& d = g.domain();
    json header = {{"domain", {d.x_min, d.x_max, d.y_min, d.y_max}},
                   {"nx", g.nx()},
                   {"ny", g.ny()}};
    open_out(path + ".json") << header.dump(2) << '\n';
}

GridDensity load_raster(const std::string& path) {
    json header;
    open_in(path + ".json") >> header;
    const auto dom = header.at("domain");
    const Domain d(dom.at(0), dom.at(1), dom.at(2), dom.at(3));
    const int nx = header.at("nx"), ny = header.at("ny");

    std::ifstream in = open_in(path);
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(nx) * ny);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        for (const std::string& f : split_csv(line)) vals.push_back(std::stod(f));
    }
    if (vals.size() != static_cast<size_t>(nx) * ny)
        throw std::runtime_error("raster size mismatch in " + path);
    return GridDensity(d, nx, ny, std::move(vals));
}

void save_labels(const std::string& path, const Tessellation& t) {
    std::ofstream out = open_out(path);
    for (int iy = 0; iy < t.ny; ++iy) {
        for (int ix = 0; ix < t.nx; ++ix) {
            if (ix) out << ',';
            out << t.label(ix, iy);
        }
        out << '\n';
    }
}

void save_points(const std::string& path, const DiscreteMeasure& nu) {
    std::ofstream out = open_out(path);
    out << "x,y,mass\n";
    for (size_t i = 0; i < nu.size(); ++i)
        out << nu.points()[i].x << ',' << nu.points()[i].y << ',' << nu.masses()[i] << '\n';
}

DiscreteMeasure load_points(const std::string& path, const Domain& domain) {
    std::ifstream in = open_in(path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<Point> pts;
    std::vector<double> masses;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 3) throw std::runtime_error("bad point row in " + path);
        pts.push_back({std::stod(fields[0]), std::stod(fields[1])});
        masses.push_back(std::stod(fields[2]));
    }
    return DiscreteMeasure(domain, std::move(pts), std::move(masses));
}

Domain bump_domain() {
    const double pi = 3.14159265358979323846;
    return Domain(-4.0 * pi, 4.0 * pi, -4.0 * pi, 4.0 * pi);
}

GridDensity load_density(const std::string& spec, const Domain& domain, int nx, int ny) {
    if (spec == "uniform") return uniform_density(domain, nx, ny, 1.0);
    if (spec == "gaussian-bump") {
        const double pi = 3.14159265358979323846;
        const double sigma2 = 2.0 * (4.0 * pi) * (4.0 * pi);
        std::vector<double> vals(static_cast<size_t>(nx) * ny);
        const GridDensity grid = uniform_density(domain, nx, ny, 1.0);
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                const Point p = grid.center(ix, iy);
                vals[static_cast<size_t>(iy) * nx + ix] =
                    1.0 + std::exp(-(p.x * p.x + p.y * p.y) / sigma2);
            }
        return GridDensity(domain, nx, ny, std::move(vals));
    }
    if (spec.rfind("csv:", 0) == 0) return load_raster(spec.substr(4));
    throw std::runtime_error("unknown density spec: " + spec);
}

}  // namespace uot
