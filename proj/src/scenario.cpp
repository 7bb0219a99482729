#include "liftoff/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "liftoff/errors.hpp"

namespace liftoff {

namespace {

struct Entry {
    std::string raw;
    bool quoted = false;
    int line = 0;
    mutable bool used = false;
};

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"", {"name"}},
        {"profile", {"kind", "A", "beta", "alpha", "r0", "n", "r", "psi"}},
        {"domain", {"n", "r_max", "num_nodes"}},
        {"initial", {"kind", "sigma", "r", "u"}},
        {"solver", {"dt", "theta", "advection", "outer_bc", "snapshot_stride"}},
        {"run", {"t_end", "diag_radius"}},
        {"output", {"dir"}},
    };
    return keys;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string join_path(const std::string& section, const std::string& key) {
    return section.empty() ? key : section + "." + key;
}

std::optional<double> to_double(std::string_view token) {
    double v = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    if (!token.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

class Document {
public:
    explicit Document(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        std::string section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            line = trim(strip_comment(line));
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ValidationError("", "line " + std::to_string(lineno) + ": malformed section header");
                section = trim(std::string_view(line).substr(1, line.size() - 2));
                if (!known_keys().contains(section) || section.empty())
                    throw ValidationError(section, "unknown section (line " + std::to_string(lineno) + ")");
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ValidationError("", "line " + std::to_string(lineno) + ": expected 'key = value'");
            const std::string key = trim(std::string_view(line).substr(0, eq));
            std::string value = trim(std::string_view(line).substr(eq + 1));
            const std::string path = join_path(section, key);
            if (key.empty()) throw ValidationError(path, "empty key (line " + std::to_string(lineno) + ")");
            if (!known_keys().at(section).contains(key)) throw ValidationError(path, "unknown key");
            Entry entry;
            entry.line = lineno;
            if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
                entry.quoted = true;
                value = value.substr(1, value.size() - 2);
            } else if (!value.empty() && value.front() == '"') {
                throw ValidationError(path, "unterminated string");
            }
            if (value.empty() && !entry.quoted) throw ValidationError(path, "missing value");
            entry.raw = value;
            if (!entries_[section].emplace(key, std::move(entry)).second)
                throw ValidationError(path, "duplicate key");
        }
    }

    bool has(const std::string& section, const std::string& key) const {
        auto s = entries_.find(section);
        return s != entries_.end() && s->second.contains(key);
    }

    std::optional<double> number(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        if (!e) return std::nullopt;
        const auto path = join_path(section, key);
        if (e->quoted) throw ValidationError(path, "expected a number, got string \"" + e->raw + "\"");
        auto v = to_double(e->raw);
        if (!v) throw ValidationError(path, "expected a number, got '" + e->raw + "'");
        return v;
    }

    double number_or(const std::string& section, const std::string& key, double fallback) const {
        return number(section, key).value_or(fallback);
    }

    double required_number(const std::string& section, const std::string& key) const {
        auto v = number(section, key);
        if (!v) throw ValidationError(join_path(section, key), "missing required key");
        return *v;
    }

    std::optional<long> integer(const std::string& section, const std::string& key) const {
        auto v = number(section, key);
        if (!v) return std::nullopt;
        if (std::floor(*v) != *v || std::abs(*v) > 1e15)
            throw ValidationError(join_path(section, key), "expected an integer");
        return static_cast<long>(*v);
    }

    std::optional<std::string> word(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        if (!e) return std::nullopt;
        return e->raw;
    }

    std::optional<std::vector<double>> list(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        if (!e) return std::nullopt;
        const auto path = join_path(section, key);
        if (e->quoted) throw ValidationError(path, "expected a list of numbers, got a string");
        std::vector<double> out;
        std::string_view rest = e->raw;
        if (!rest.empty() && rest.front() == '[' && rest.back() == ']') rest = rest.substr(1, rest.size() - 2);
        while (true) {
            const auto comma = rest.find(',');
            const std::string item = trim(rest.substr(0, comma));
            auto v = to_double(item);
            if (!v) throw ValidationError(path, "expected a number in list, got '" + item + "'");
            out.push_back(*v);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        return out;
    }

private:
    static std::string strip_comment(const std::string& line) {
        bool in_quotes = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_quotes = !in_quotes;
            if (!in_quotes && (line[i] == '#' || line[i] == ';')) return line.substr(0, i);
        }
        return line;
    }

    const Entry* find(const std::string& section, const std::string& key) const {
        auto s = entries_.find(section);
        if (s == entries_.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        k->second.used = true;
        return &k->second;
    }

    std::map<std::string, std::map<std::string, Entry>> entries_;
};

// Key paths inside profile validation errors are bare; qualify them.
template <class F>
auto with_section(const std::string& section, F&& f) {
    try {
        return f();
    } catch (const ValidationError& e) {
        if (e.key_path().find('.') != std::string::npos) throw;
        const std::string msg = std::string(e.what()).substr(e.key_path().empty() ? 0 : e.key_path().size() + 2);
        throw ValidationError(join_path(section, e.key_path()), msg);
    }
}

DriftProfile parse_profile(const Document& doc, int n_dim) {
    const auto kind = doc.word("profile", "kind");
    if (!kind) throw ValidationError("profile.kind", "missing required key");
    return with_section("profile", [&]() -> DriftProfile {
        if (*kind == "zero") return DriftProfile::zero();
        if (*kind == "linear") return DriftProfile::linear();
        if (*kind == "powerlaw") {
            return DriftProfile::power_law(doc.required_number("profile", "A"),
                                           doc.required_number("profile", "beta"),
                                           doc.number_or("profile", "r0", 1.0));
        }
        if (*kind == "logcorrected") {
            const long n = doc.integer("profile", "n").value_or(n_dim);
            return DriftProfile::log_corrected(static_cast<int>(n), doc.required_number("profile", "alpha"),
                                               doc.number_or("profile", "r0", std::exp(1.0)));
        }
        if (*kind == "tabulated") {
            auto r = doc.list("profile", "r");
            auto psi = doc.list("profile", "psi");
            if (!r) throw ValidationError("profile.r", "missing required key");
            if (!psi) throw ValidationError("profile.psi", "missing required key");
            return DriftProfile::tabulated(std::move(*r), std::move(*psi));
        }
        throw ValidationError("kind", "unknown profile variant '" + *kind +
                                          "' (expected powerlaw, logcorrected, linear, zero or tabulated)");
    });
}

OuterBoundary parse_bc(const std::string& s) {
    if (s == "neumann") return OuterBoundary::NeumannZero;
    if (s == "dirichlet_frozen") return OuterBoundary::DirichletFrozen;
    throw ValidationError("solver.outer_bc", "expected neumann or dirichlet_frozen, got '" + s + "'");
}

Advection parse_advection(const std::string& s) {
    if (s == "centered") return Advection::Centered;
    if (s == "upwind") return Advection::Upwind;
    throw ValidationError("solver.advection", "expected centered or upwind, got '" + s + "'");
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
    return out;
}

void check_samples(const std::vector<double>& r, const std::vector<double>& v, const std::string& section,
                   const char* value_key, double r_max) {
    if (r.size() != v.size())
        throw ValidationError(section + "." + value_key, "length differs from " + section + ".r");
    if (r.size() < 2) throw ValidationError(section + ".r", "need at least two samples");
    for (std::size_t i = 1; i < r.size(); ++i)
        if (!(r[i] > r[i - 1])) throw ValidationError(section + ".r", "radii must be strictly increasing");
    if (r.front() > 0.0 || r.back() < r_max)
        throw ValidationError(section + ".r", "samples must cover [0, r_max]");
}

}  // namespace

void Scenario::validate() const {
    solver.validate();
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ValidationError("run.t_end", "must be >= 0");
    if (!(diag_radius >= 0.0) || diag_radius > grid.r_max())
        throw ValidationError("run.diag_radius", "must lie in [0, r_max]");
    if (profile.max_radius() < grid.r_max())
        throw ValidationError("profile.r", "tabulated profile must cover [0, r_max]");
    if (auto* g = std::get_if<GaussianData>(&initial)) {
        g->validate();
        if (g->n_dim != grid.dimension()) throw ValidationError("domain.n", "initial datum dimension mismatch");
    } else {
        const auto& t = std::get<TabulatedInitial>(initial);
        check_samples(t.radii, t.values, "initial", "u", grid.r_max());
    }
}

RadialField Scenario::initial_field() const {
    if (auto* g = std::get_if<GaussianData>(&initial)) return g->sample(grid);
    const auto& t = std::get<TabulatedInitial>(initial);
    return RadialField::sample(grid, [&](double r) {
        auto it = std::upper_bound(t.radii.begin(), t.radii.end(), r);
        if (it == t.radii.end()) return t.values.back();
        if (it == t.radii.begin()) return t.values.front();
        const auto k = static_cast<std::size_t>(it - t.radii.begin()) - 1;
        const double s = (r - t.radii[k]) / (t.radii[k + 1] - t.radii[k]);
        return (1.0 - s) * t.values[k] + s * t.values[k + 1];
    });
}

std::string Scenario::to_document() const {
    std::ostringstream os;
    os << "name = \"" << name << "\"\n\n[profile]\n";
    const auto& v = profile.variant();
    os << "kind = " << to_string(profile.kind()) << "\n";
    if (auto* p = std::get_if<PowerLaw>(&v)) {
        os << "A = " << fmt(p->amplitude) << "\nbeta = " << fmt(p->exponent) << "\nr0 = " << fmt(p->ramp_radius)
           << "\n";
    } else if (auto* p = std::get_if<LogCorrected>(&v)) {
        os << "n = " << p->dimension << "\nalpha = " << fmt(p->alpha) << "\nr0 = " << fmt(p->ramp_radius) << "\n";
    } else if (auto* p = std::get_if<Tabulated>(&v)) {
        os << "r = " << fmt_list(p->radii) << "\npsi = " << fmt_list(p->values) << "\n";
    }
    os << "\n[domain]\nn = " << grid.dimension() << "\nr_max = " << fmt(grid.r_max())
       << "\nnum_nodes = " << grid.size() << "\n\n[initial]\n";
    if (auto* g = std::get_if<GaussianData>(&initial)) {
        os << "kind = gaussian\nsigma = " << fmt(g->sigma) << "\n";
    } else {
        const auto& t = std::get<TabulatedInitial>(initial);
        os << "kind = tabulated\nr = " << fmt_list(t.radii) << "\nu = " << fmt_list(t.values) << "\n";
    }
    os << "\n[solver]\ndt = " << fmt(solver.dt) << "\ntheta = " << fmt(solver.theta)
       << "\nadvection = " << to_string(solver.advection) << "\nouter_bc = " << to_string(solver.outer_bc)
       << "\nsnapshot_stride = " << solver.snapshot_stride << "\n\n[run]\nt_end = " << fmt(t_end)
       << "\ndiag_radius = " << fmt(diag_radius) << "\n";
    if (!output_dir.empty()) os << "\n[output]\ndir = \"" << output_dir << "\"\n";
    return os.str();
}

Scenario parse_scenario(const std::string& text) {
    const Document doc(text);
    Scenario s;
    s.name = doc.word("", "name").value_or("scenario");

    const auto n = doc.integer("domain", "n");
    if (!n) throw ValidationError("domain.n", "missing required key");
    if (*n < 1 || *n > 64) throw ValidationError("domain.n", "must lie in [1, 64]");
    const double r_max = doc.number_or("domain", "r_max", 20.0);
    const long nodes = doc.integer("domain", "num_nodes").value_or(2001);
    if (nodes < 3) throw ValidationError("domain.num_nodes", "must be >= 3");
    s.grid = with_section("domain", [&] { return RadialGrid(r_max, static_cast<std::size_t>(nodes), static_cast<int>(*n)); });

    s.profile = parse_profile(doc, static_cast<int>(*n));

    const std::string initial_kind = doc.word("initial", "kind").value_or("gaussian");
    if (initial_kind == "gaussian") {
        s.initial = GaussianData{doc.number_or("initial", "sigma", 1.0), static_cast<int>(*n)};
    } else if (initial_kind == "tabulated") {
        auto r = doc.list("initial", "r");
        auto u = doc.list("initial", "u");
        if (!r) throw ValidationError("initial.r", "missing required key");
        if (!u) throw ValidationError("initial.u", "missing required key");
        s.initial = TabulatedInitial{std::move(*r), std::move(*u)};
    } else {
        throw ValidationError("initial.kind", "expected gaussian or tabulated, got '" + initial_kind + "'");
    }

    s.solver.dt = doc.number_or("solver", "dt", s.solver.dt);
    s.solver.theta = doc.number_or("solver", "theta", s.solver.theta);
    if (auto a = doc.word("solver", "advection")) s.solver.advection = parse_advection(*a);
    if (auto b = doc.word("solver", "outer_bc")) s.solver.outer_bc = parse_bc(*b);
    if (auto k = doc.integer("solver", "snapshot_stride")) {
        if (*k < 1) throw ValidationError("solver.snapshot_stride", "must be >= 1");
        s.solver.snapshot_stride = static_cast<std::size_t>(*k);
    }

    s.t_end = doc.number_or("run", "t_end", 1.0);
    s.diag_radius = doc.number_or("run", "diag_radius", 0.8 * s.grid.r_max());
    s.output_dir = doc.word("output", "dir").value_or("");

    if (doc.has("initial", "sigma") && initial_kind != "gaussian")
        throw ValidationError("initial.sigma", "only valid for gaussian initial data");
    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace liftoff
