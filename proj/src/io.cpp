#include "hk/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hk::io {

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_text_atomic: cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write_text_atomic: write failed " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string grid_csv(const char* coord, const std::vector<double>& x,
                     const std::vector<double>& v) {
    std::ostringstream out;
    out << coord << ",value\n";
    for (size_t i = 0; i < x.size(); ++i) out << num(x[i]) << ',' << num(v[i]) << '\n';
    return out.str();
}

void grid_from_csv(const std::string& text, std::vector<double>& x, std::vector<double>& v) {
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("grid csv: malformed row");
        x.push_back(std::stod(line.substr(0, comma)));
        v.push_back(std::stod(line.substr(comma + 1)));
    }
}

}  // namespace

std::string radial_to_csv(const RadialGridFunction& f) { return grid_csv("r", f.r, f.v); }

RadialGridFunction radial_from_csv(const HyperbolicSpace& space, const std::string& text) {
    std::vector<double> x, v;
    grid_from_csv(text, x, v);
    return make_radial(space, std::move(x), std::move(v));
}

std::string spectral_to_csv(const SpectralGridFunction& f) { return grid_csv("lambda", f.lam, f.v); }

SpectralGridFunction spectral_from_csv(const HyperbolicSpace& space, const std::string& text) {
    SpectralGridFunction g;
    g.space = space;
    grid_from_csv(text, g.lam, g.v);
    g.check();
    return g;
}

namespace {

nlohmann::json envelope(int n, const char* coord, const std::vector<double>& x,
                        const std::vector<double>& v, double tail) {
    return nlohmann::json{{"space", {{"n", n}}},
                          {"coordinate", coord},
                          {"grid", x},
                          {"values", v},
                          {"tail_bound", tail}};
}

}  // namespace

nlohmann::json radial_to_json(const RadialGridFunction& f) {
    auto j = envelope(f.space.n, "r", f.r, f.v, f.tail_bound);
    j["interpolation"] = f.interp == Interp::cubic ? "cubic" : "linear";
    return j;
}

RadialGridFunction radial_from_json(const nlohmann::json& j) {
    HyperbolicSpace space(j.at("space").at("n").get<int>());
    const auto interp =
        j.value("interpolation", "cubic") == std::string("linear") ? Interp::linear : Interp::cubic;
    auto f = make_radial(space, j.at("grid").get<std::vector<double>>(),
                         j.at("values").get<std::vector<double>>(), interp);
    f.tail_bound = j.value("tail_bound", 0.0);
    return f;
}

nlohmann::json spectral_to_json(const SpectralGridFunction& f) {
    return envelope(f.space.n, "lambda", f.lam, f.v, f.tail_bound);
}

SpectralGridFunction spectral_from_json(const nlohmann::json& j) {
    SpectralGridFunction g;
    g.space = HyperbolicSpace(j.at("space").at("n").get<int>());
    g.lam = j.at("grid").get<std::vector<double>>();
    g.v = j.at("values").get<std::vector<double>>();
    g.tail_bound = j.value("tail_bound", 0.0);
    g.check();
    return g;
}

}  // namespace hk::io
