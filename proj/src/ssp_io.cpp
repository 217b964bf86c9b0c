#include "ssguard/ssp_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ssguard/axisym.hpp"

namespace ssguard::io {

namespace {

static_assert(std::endian::native == std::endian::little,
              "ssp-1 writes little-endian float64 directly");

struct ArrayDecl {
    std::string name;
    int rank = 1;
    std::size_t offset = 0;   // bytes past the header
    std::size_t length = 0;   // float64 count
};

struct Header {
    double gamma = 0.0;
    std::string symmetry;
    int dims[3] = {0, 0, 0};
    double spacing[3] = {0, 0, 0};
    double origin[3] = {0, 0, 0};
    std::string boundary = "decay";
    double curl_tol = 1e-6;
    bool has_c_flat = false;
    double c_flat = 0.0;
    std::vector<ArrayDecl> arrays;
};

[[noreturn]] void malformed(const std::string& field) {
    throw Error("malformed profile file: " + field);
}

Header parse_header(std::istream& is) {
    Header h;
    std::string line;
    if (!std::getline(is, line) || line != "ssp-1") malformed("format tag (expected ssp-1)");
    bool saw_gamma = false, saw_dims = false, saw_spacing = false, saw_symmetry = false;
    while (std::getline(is, line)) {
        if (line == "end") {
            if (!saw_gamma) malformed("gamma");
            if (!saw_symmetry) malformed("symmetry");
            if (!saw_dims) malformed("dims");
            if (!saw_spacing) malformed("spacing");
            return h;
        }
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "gamma") {
            if (!(ss >> h.gamma) || !(h.gamma > 0.0)) malformed("gamma");
            saw_gamma = true;
        } else if (key == "symmetry") {
            ss >> h.symmetry;
            if (h.symmetry != "cartesian" && h.symmetry != "axisym") malformed("symmetry");
            saw_symmetry = true;
        } else if (key == "dims") {
            if (!(ss >> h.dims[0] >> h.dims[1] >> h.dims[2])) malformed("dims");
            saw_dims = true;
        } else if (key == "spacing") {
            if (!(ss >> h.spacing[0] >> h.spacing[1] >> h.spacing[2])) malformed("spacing");
            saw_spacing = true;
        } else if (key == "origin") {
            if (!(ss >> h.origin[0] >> h.origin[1] >> h.origin[2])) malformed("origin");
        } else if (key == "boundary") {
            ss >> h.boundary;
            if (h.boundary != "decay" && h.boundary != "periodic") malformed("boundary");
        } else if (key == "curl_tol") {
            if (!(ss >> h.curl_tol)) malformed("curl_tol");
        } else if (key == "c_flat") {
            if (!(ss >> h.c_flat)) malformed("c_flat");
            h.has_c_flat = true;
        } else if (key == "array") {
            ArrayDecl a;
            if (!(ss >> a.name >> a.rank >> a.offset >> a.length)) malformed("array");
            if (a.rank != 1 && a.rank != 3) malformed("array rank (1 or 3)");
            h.arrays.push_back(a);
        } else {
            malformed("unknown header key '" + key + "'");
        }
    }
    malformed("missing end");
}

std::vector<double> read_block(std::istream& is, std::streampos payload_start,
                               const ArrayDecl& a) {
    std::vector<double> v(a.length);
    is.seekg(payload_start + static_cast<std::streamoff>(a.offset));
    is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(a.length * 8));
    if (!is) throw Error("profile payload truncated while reading array " + a.name);
    return v;
}

const ArrayDecl* find_array(const Header& h, const std::string& name) {
    for (const auto& a : h.arrays)
        if (a.name == name) return &a;
    return nullptr;
}

void write_block(std::ostream& os, const std::vector<double>& v) {
    os.write(reinterpret_cast<const char*>(v.data()),
             static_cast<std::streamsize>(v.size() * 8));
}

}  // namespace

bool file_is_axisym(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open profile file: " + path);
    const Header h = parse_header(f);
    return h.symmetry == "axisym";
}

Profile load_profile(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open profile file: " + path);
    const Header h = parse_header(f);
    if (h.symmetry == "axisym") return axisym::cartesian_adapter(load_axisym(path));
    const std::streampos payload = f.tellg();

    Grid3 g;
    g.dims = {h.dims[0], h.dims[1], h.dims[2]};
    g.spacing = {h.spacing[0], h.spacing[1], h.spacing[2]};
    g.origin = {h.origin[0], h.origin[1], h.origin[2]};
    g.boundary = h.boundary == "periodic" ? BoundaryPolicy::periodic
                                          : BoundaryPolicy::decay_to_zero;
    g.validate();
    const std::size_t n = g.size();

    Profile p;
    p.gamma = h.gamma;
    p.symmetry = Symmetry::cartesian;
    p.grid = g;
    p.curl_tol = h.curl_tol;
    if (h.has_c_flat) p.c_flat = h.c_flat;
    p.source = path;

    const ArrayDecl* u = find_array(h, "U");
    if (!u) malformed("missing array U");
    if (u->rank != 3 || u->length != 3 * n) malformed("array U rank/length");
    {
        auto block = read_block(f, payload, *u);
        std::vector<double> x(block.begin(), block.begin() + n);
        std::vector<double> y(block.begin() + n, block.begin() + 2 * n);
        std::vector<double> z(block.begin() + 2 * n, block.end());
        const double power = (h.gamma - 1.0) / h.gamma;
        p.U = VectorField::sampled(g, std::move(x), std::move(y), std::move(z), 3,
                                   Extrapolation::envelope(power));
    }
    if (const ArrayDecl* w = find_array(h, "Omega")) {
        if (w->rank != 3 || w->length != 3 * n) malformed("array Omega rank/length");
        auto block = read_block(f, payload, *w);
        std::vector<double> x(block.begin(), block.begin() + n);
        std::vector<double> y(block.begin() + n, block.begin() + 2 * n);
        std::vector<double> z(block.begin() + 2 * n, block.end());
        p.Omega = VectorField::sampled(g, std::move(x), std::move(y), std::move(z), 3,
                                       Extrapolation::envelope(-1.0 / h.gamma));
    }
    if (const ArrayDecl* pr = find_array(h, "P")) {
        if (pr->rank != 1 || pr->length != n) malformed("array P rank/length");
        p.P = ScalarField::sampled(g, read_block(f, payload, *pr), 3);
    }
    return p;
}

void save_profile(const Profile& p, const std::string& path) {
    if (p.symmetry == Symmetry::axisym)
        throw Error("axisymmetric profiles are saved with save_axisym");
    const Grid3& g = p.grid;
    const std::size_t n = g.size();
    std::ostringstream header;
    header << "ssp-1\n";
    header << "gamma " << p.gamma << "\n";
    header << "symmetry cartesian\n";
    header << "dims " << g.dims[0] << " " << g.dims[1] << " " << g.dims[2] << "\n";
    header << "spacing " << g.spacing.x << " " << g.spacing.y << " " << g.spacing.z << "\n";
    header << "origin " << g.origin.x << " " << g.origin.y << " " << g.origin.z << "\n";
    header << "boundary "
           << (g.boundary == BoundaryPolicy::periodic ? "periodic" : "decay") << "\n";
    header << "curl_tol " << p.curl_tol << "\n";
    if (p.c_flat) header << "c_flat " << *p.c_flat << "\n";

    std::size_t offset = 0;
    header << "array U 3 " << offset << " " << 3 * n << "\n";
    offset += 3 * n * 8;
    if (p.Omega) {
        header << "array Omega 3 " << offset << " " << 3 * n << "\n";
        offset += 3 * n * 8;
    }
    if (p.P) {
        header << "array P 1 " << offset << " " << n << "\n";
        offset += n * 8;
    }
    header << "end\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write profile file: " + path);
    f << header.str();
    const auto us = sample_vector(p.U, g);
    for (const auto& comp : us) write_block(f, comp);
    if (p.Omega) {
        const auto ws = sample_vector(*p.Omega, g);
        for (const auto& comp : ws) write_block(f, comp);
    }
    if (p.P) write_block(f, sample_scalar(*p.P, g));
    if (!f) throw Error("short write to profile file: " + path);
}

axisym::AxisymProfile load_axisym(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open profile file: " + path);
    const Header h = parse_header(f);
    if (h.symmetry != "axisym") throw Error("profile file is not axisymmetric: " + path);
    if (h.dims[2] != 1) malformed("axisym dims must be (nr, nz, 1)");
    const std::streampos payload = f.tellg();

    Grid2 g;
    g.nr = h.dims[0];
    g.nz = h.dims[1];
    g.dr = h.spacing[0];
    g.dz = h.spacing[1];
    g.r0 = h.origin[0];
    g.z0 = h.origin[1];
    g.validate();
    const std::size_t n = g.size();

    axisym::AxisymProfile p;
    p.gamma = h.gamma;
    p.grid = g;
    p.curl_tol = h.curl_tol;
    p.source = path;

    auto scalar = [&](const char* name, bool required) -> std::optional<axisym::AxiField> {
        const ArrayDecl* a = find_array(h, name);
        if (!a) {
            if (required) malformed(std::string("missing array ") + name);
            return std::nullopt;
        }
        if (a->rank != 1 || a->length != n)
            malformed(std::string("array ") + name + " rank/length");
        return axisym::AxiField::sampled(g, read_block(f, payload, *a), 3);
    };
    p.U_r = *scalar("U_r", true);
    p.U_theta = *scalar("U_theta", true);
    p.U_z = *scalar("U_z", true);
    p.Omega_r = scalar("Omega_r", false);
    p.Omega_theta = scalar("Omega_theta", false);
    p.Omega_z = scalar("Omega_z", false);
    p.P = scalar("P", false);
    return p;
}

void save_axisym(const axisym::AxisymProfile& p, const std::string& path) {
    const Grid2& g = p.grid;
    const std::size_t n = g.size();

    std::vector<std::pair<std::string, const axisym::AxiField*>> arrays{
        {"U_r", &p.U_r}, {"U_theta", &p.U_theta}, {"U_z", &p.U_z}};
    if (p.Omega_r) arrays.emplace_back("Omega_r", &*p.Omega_r);
    if (p.Omega_theta) arrays.emplace_back("Omega_theta", &*p.Omega_theta);
    if (p.Omega_z) arrays.emplace_back("Omega_z", &*p.Omega_z);
    if (p.P) arrays.emplace_back("P", &*p.P);

    std::ostringstream header;
    header << "ssp-1\n";
    header << "gamma " << p.gamma << "\n";
    header << "symmetry axisym\n";
    header << "dims " << g.nr << " " << g.nz << " 1\n";
    header << "spacing " << g.dr << " " << g.dz << " 1\n";
    header << "origin " << g.r0 << " " << g.z0 << " 0\n";
    header << "boundary decay\n";
    header << "curl_tol " << p.curl_tol << "\n";
    std::size_t offset = 0;
    for (const auto& [name, field] : arrays) {
        header << "array " << name << " 1 " << offset << " " << n << "\n";
        offset += n * 8;
    }
    header << "end\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write profile file: " + path);
    f << header.str();
    for (const auto& [name, field] : arrays) {
        std::vector<double> v(n);
        for (int i = 0; i < g.nr; ++i)
            for (int j = 0; j < g.nz; ++j) v[g.index(i, j)] = (*field)(g.r(i), g.z(j));
        write_block(f, v);
    }
    if (!f) throw Error("short write to profile file: " + path);
}

Series load_series(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open series file: " + path);
    Series s;
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double t, v;
        if (ss >> t >> v) {
            s.t.push_back(t);
            s.v.push_back(v);
        }
    }
    if (s.t.size() < 2) throw Error("series file has fewer than 2 samples: " + path);
    return s;
}

std::vector<Vec3> load_points(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open points file: " + path);
    std::vector<Vec3> pts;
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        Vec3 p;
        if (ss >> p.x >> p.y >> p.z) pts.push_back(p);
    }
    if (pts.empty()) throw Error("points file is empty: " + path);
    return pts;
}

}  // namespace ssguard::io
