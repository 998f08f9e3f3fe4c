#include "strand/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace strand {

namespace toml {

double Value::as_number() const {
    if (type == Type::Integer) return static_cast<double>(integer);
    if (type == Type::Float) return real;
    throw ConfigError("expected a number");
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char take() {
        const char c = text[pos++];
        if (c == '\n') ++line;
        return c;
    }
    void skip_ws_inline() {
        while (!done() && (peek() == ' ' || peek() == '\t')) ++pos;
    }
    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream msg;
        msg << "config parse error at line " << line << ": " << what;
        throw ConfigError(msg.str());
    }
};

void skip_ws_and_comments(Cursor& c, bool cross_lines) {
    while (!c.done()) {
        const char ch = c.peek();
        if (ch == ' ' || ch == '\t') {
            c.take();
        } else if (ch == '#') {
            while (!c.done() && c.peek() != '\n') c.take();
        } else if (cross_lines && (ch == '\n' || ch == '\r')) {
            c.take();
        } else {
            break;
        }
    }
}

Value parse_value(Cursor& c);

Value parse_array(Cursor& c) {
    Value v;
    v.type = Value::Type::Array;
    c.take(); // '['
    skip_ws_and_comments(c, true);
    if (!c.done() && c.peek() == ']') {
        c.take();
        return v;
    }
    while (true) {
        v.array.push_back(parse_value(c));
        skip_ws_and_comments(c, true);
        if (c.done()) c.fail("unterminated array");
        const char ch = c.take();
        if (ch == ']') break;
        if (ch != ',') c.fail("expected ',' or ']' in array");
        skip_ws_and_comments(c, true);
        if (!c.done() && c.peek() == ']') { // trailing comma
            c.take();
            break;
        }
    }
    return v;
}

Value parse_value(Cursor& c) {
    skip_ws_and_comments(c, true);
    if (c.done()) c.fail("missing value");
    const char ch = c.peek();
    if (ch == '[') return parse_array(c);
    if (ch == '"') {
        c.take();
        Value v;
        v.type = Value::Type::String;
        while (!c.done() && c.peek() != '"') {
            if (c.peek() == '\n') c.fail("unterminated string");
            v.str.push_back(c.take());
        }
        if (c.done()) c.fail("unterminated string");
        c.take();
        return v;
    }
    std::string tok;
    while (!c.done() && c.peek() != ',' && c.peek() != ']' && c.peek() != '\n' &&
           c.peek() != '#' && c.peek() != '\r')
        tok.push_back(c.take());
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.pop_back();
    if (tok.empty()) c.fail("missing value");
    Value v;
    if (tok == "true" || tok == "false") {
        v.type = Value::Type::Boolean;
        v.boolean = (tok == "true");
        return v;
    }
    const bool looks_float = tok.find_first_of(".eE") != std::string::npos ||
                             tok == "inf" || tok == "-inf" || tok == "nan";
    try {
        std::size_t used = 0;
        if (looks_float) {
            v.type = Value::Type::Float;
            v.real = std::stod(tok, &used);
        } else {
            v.type = Value::Type::Integer;
            v.integer = std::stoll(tok, &used);
        }
        if (used != tok.size()) c.fail("bad value '" + tok + "'");
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        c.fail("bad value '" + tok + "'");
    }
    return v;
}

bool key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

} // namespace

std::map<std::string, Value> parse(const std::string& text) {
    std::map<std::string, Value> doc;
    Cursor c{text};
    std::string prefix;
    while (!c.done()) {
        skip_ws_and_comments(c, true);
        if (c.done()) break;
        if (c.peek() == '[') {
            c.take();
            std::string name;
            while (!c.done() && c.peek() != ']') {
                if (c.peek() == '\n') c.fail("unterminated table header");
                name.push_back(c.take());
            }
            if (c.done()) c.fail("unterminated table header");
            c.take();
            for (char ch : name)
                if (!key_char(ch)) c.fail("bad table name '" + name + "'");
            prefix = name;
            c.skip_ws_inline();
            skip_ws_and_comments(c, false);
            if (!c.done() && c.peek() != '\n' && c.peek() != '\r')
                c.fail("trailing characters after table header");
            continue;
        }
        std::string key;
        while (!c.done() && key_char(c.peek())) key.push_back(c.take());
        if (key.empty()) c.fail("expected key");
        c.skip_ws_inline();
        if (c.done() || c.take() != '=') c.fail("expected '=' after key '" + key + "'");
        Value v = parse_value(c);
        skip_ws_and_comments(c, false);
        if (!c.done() && c.peek() != '\n' && c.peek() != '\r')
            c.fail("trailing characters after value for '" + key + "'");
        const std::string full = prefix.empty() ? key : prefix + "." + key;
        if (doc.count(full)) c.fail("duplicate key '" + full + "'");
        doc.emplace(full, std::move(v));
    }
    return doc;
}

} // namespace toml

namespace {

class ConfigReader {
  public:
    explicit ConfigReader(std::map<std::string, toml::Value> doc) : doc_(std::move(doc)) {}

    bool has(const std::string& key) const { return doc_.count(key) > 0; }

    const toml::Value* get(const std::string& key) {
        auto it = doc_.find(key);
        if (it == doc_.end()) return nullptr;
        consumed_.insert(key);
        return &it->second;
    }

    double number(const std::string& key, double fallback) {
        const toml::Value* v = get(key);
        if (v == nullptr) return fallback;
        return v->as_number();
    }

    std::optional<double> number_opt(const std::string& key) {
        const toml::Value* v = get(key);
        if (v == nullptr) return std::nullopt;
        return v->as_number();
    }

    int integer(const std::string& key, int fallback) {
        const toml::Value* v = get(key);
        if (v == nullptr) return fallback;
        if (v->type != toml::Value::Type::Integer)
            throw ConfigError(key + " must be an integer");
        return static_cast<int>(v->integer);
    }

    std::vector<double> numbers(const std::string& key) {
        const toml::Value* v = get(key);
        if (v == nullptr) return {};
        if (v->type != toml::Value::Type::Array)
            throw ConfigError(key + " must be an array");
        std::vector<double> out;
        for (const auto& e : v->array) out.push_back(e.as_number());
        return out;
    }

    void reject_unknown() const {
        for (const auto& [key, value] : doc_)
            if (!consumed_.count(key)) throw ConfigError("unknown key: " + key);
    }

  private:
    std::map<std::string, toml::Value> doc_;
    std::set<std::string> consumed_;
};

InertiaOperator inertia_from_numbers(const std::vector<double>& v, const std::string& key) {
    if (v.size() == 3) return InertiaOperator::diagonal(v[0], v[1], v[2]);
    if (v.size() == 9) {
        Mat3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = v[static_cast<std::size_t>(i * 3 + j)];
        return InertiaOperator(m);
    }
    throw ConfigError(key + " must have 3 (diagonal) or 9 (row-major) entries");
}

Vec3 vec3_from_numbers(const std::vector<double>& v, const std::string& key) {
    if (v.size() != 3) throw ConfigError(key + " must have 3 entries");
    const Vec3 out{v[0], v[1], v[2]};
    if (!out.finite()) throw ConfigError(key + " entries must be finite");
    return out;
}

FourierSection read_section(ConfigReader& reader, const std::string& prefix) {
    FourierSection section;
    if (reader.has(prefix + ".constant"))
        section.constant = vec3_from_numbers(reader.numbers(prefix + ".constant"),
                                             prefix + ".constant");
    const toml::Value* modes = reader.get(prefix + ".modes");
    if (modes != nullptr) {
        if (modes->type != toml::Value::Type::Array)
            throw ConfigError(prefix + ".modes must be an array of [component, wavenumber, "
                                       "amplitude, phase] rows");
        for (const auto& row : modes->array) {
            if (row.type != toml::Value::Type::Array || row.array.size() != 4)
                throw ConfigError(prefix + ".modes rows must be [component, wavenumber, "
                                           "amplitude, phase]");
            FourierMode m;
            m.component = static_cast<int>(row.array[0].as_number());
            m.wavenumber = static_cast<int>(row.array[1].as_number());
            m.amplitude = row.array[2].as_number();
            m.phase = row.array[3].as_number();
            if (m.component < 0 || m.component > 2)
                throw ConfigError(prefix + ".modes component must be 0, 1 or 2");
            if (m.wavenumber < 0)
                throw ConfigError(prefix + ".modes wavenumber must be >= 0");
            if (!std::isfinite(m.amplitude) || !std::isfinite(m.phase))
                throw ConfigError(prefix + ".modes amplitude and phase must be finite");
            section.modes.push_back(m);
        }
    }
    return section;
}

} // namespace

ScenarioConfig ScenarioConfig::from_string(const std::string& text) {
    ConfigReader reader(toml::parse(text));
    ScenarioConfig cfg;
    cfg.source_text = text;

    {
        const toml::Value* seed = reader.get("seed");
        if (seed != nullptr) {
            if (seed->type != toml::Value::Type::Integer || seed->integer < 0)
                throw ConfigError("seed must be a non-negative integer");
            cfg.seed = static_cast<std::uint64_t>(seed->integer);
        }
    }

    cfg.grid_n = reader.integer("grid.n", 0);
    cfg.grid_length = reader.number("grid.length", 0.0);
    if (cfg.grid_n < 8) throw ConfigError("grid.n must be >= 8");
    if (!(cfg.grid_length > 0.0)) throw ConfigError("grid.length must be > 0");

    cfg.dt = reader.number_opt("time.dt");
    cfg.cfl_safety = reader.number_opt("time.cfl_safety");
    if (cfg.dt.has_value() == cfg.cfl_safety.has_value())
        throw ConfigError("time: specify exactly one of dt or cfl_safety");
    if (cfg.dt && !(*cfg.dt > 0.0)) throw ConfigError("time.dt must be > 0");
    if (cfg.cfl_safety && (!(*cfg.cfl_safety > 0.0) || *cfg.cfl_safety > 1.0))
        throw ConfigError("time.cfl_safety must be in (0, 1]");
    if (!reader.has("time.t_end")) throw ConfigError("time.t_end is required");
    cfg.t_end = reader.number("time.t_end", 0.0);
    if (cfg.t_end < 0.0) throw ConfigError("time.t_end must be >= 0");
    cfg.snapshot_stride = reader.integer("time.snapshot_stride", 1);
    cfg.diagnostics_stride = reader.integer("time.diagnostics_stride", 1);
    if (cfg.snapshot_stride < 1) throw ConfigError("time.snapshot_stride must be >= 1");
    if (cfg.diagnostics_stride < 1) throw ConfigError("time.diagnostics_stride must be >= 1");

    cfg.params.v = reader.number("params.v", 1.0);
    if (!(cfg.params.v > 0.0)) throw ConfigError("params.v must be > 0");
    try {
        if (reader.has("params.inertia_i"))
            cfg.params.inertia_i =
                inertia_from_numbers(reader.numbers("params.inertia_i"), "params.inertia_i");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("params.inertia_i: ") + e.what());
    }
    try {
        if (reader.has("params.inertia_j"))
            cfg.params.inertia_j =
                inertia_from_numbers(reader.numbers("params.inertia_j"), "params.inertia_j");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("params.inertia_j: ") + e.what());
    }

    {
        const toml::Value* type = reader.get("params.potential.type");
        if (type != nullptr) {
            if (type->type != toml::Value::Type::String)
                throw ConfigError("params.potential.type must be a string");
            if (type->str == "quadratic") {
                cfg.params.potential =
                    RadialPotential::quadratic(reader.number("params.potential.k", 0.0),
                                               reader.number("params.potential.r0", 0.0));
            } else if (type->str == "poly_r2") {
                cfg.params.potential =
                    RadialPotential::poly_r2(reader.numbers("params.potential.coeffs"));
            } else {
                throw ConfigError("params.potential.type must be 'quadratic' or 'poly_r2'");
            }
        }
    }

    if (reader.has("connection.lambda_k_s"))
        cfg.params.connection.lambda_k[DIR_S] =
            vec3_from_numbers(reader.numbers("connection.lambda_k_s"), "connection.lambda_k_s");
    if (reader.has("connection.lambda_k_t"))
        cfg.params.connection.lambda_k[DIR_T] =
            vec3_from_numbers(reader.numbers("connection.lambda_k_t"), "connection.lambda_k_t");
    if (reader.has("connection.lambda_e_s"))
        cfg.params.connection.lambda_e[DIR_S] =
            vec3_from_numbers(reader.numbers("connection.lambda_e_s"), "connection.lambda_e_s");
    if (reader.has("connection.lambda_e_t"))
        cfg.params.connection.lambda_e[DIR_T] =
            vec3_from_numbers(reader.numbers("connection.lambda_e_t"), "connection.lambda_e_t");
    if (reader.has("connection.christoffel")) {
        const std::vector<double> g = reader.numbers("connection.christoffel");
        if (g.size() != 8)
            throw ConfigError("connection.christoffel must have 8 entries "
                              "(Gamma^i_{jk}, i,j,k in {s,t}, row-major)");
        std::size_t idx = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) cfg.params.connection.christoffel[i][j][k] = g[idx++];
    }

    cfg.init_rho = read_section(reader, "initial.rho");
    cfg.init_pi_t = read_section(reader, "initial.pi_t");
    cfg.init_mu_t = read_section(reader, "initial.mu_t");
    cfg.init_omega_s = read_section(reader, "initial.omega_s");

    reader.reject_unknown();
    return cfg;
}

ScenarioConfig ScenarioConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

IntegratorConfig ScenarioConfig::integrator() const {
    IntegratorConfig c;
    c.dt = dt;
    if (cfl_safety) c.cfl_safety = *cfl_safety;
    c.t_end = t_end;
    c.snapshot_stride = snapshot_stride;
    c.diagnostics_stride = diagnostics_stride;
    return c;
}

StrandState ScenarioConfig::initial_state() const {
    const Grid1D g = grid();
    StrandState state = StrandState::zero(g);
    for (int j = 0; j < g.n; ++j) {
        const double s = g.point(j);
        const std::size_t k = static_cast<std::size_t>(j);
        state.rho[k] = init_rho.eval(s, g.length);
        state.pi_t[k] = init_pi_t.eval(s, g.length);
        state.mu_t[k] = init_mu_t.eval(s, g.length);
        state.omega_s[k] = init_omega_s.eval(s, g.length);
    }
    return state;
}

ScenarioConfig ScenarioConfig::refined(int level) const {
    ScenarioConfig r = *this;
    for (int i = 0; i < level; ++i) {
        r.grid_n *= 2;
        if (r.dt) r.dt = *r.dt / 2.0;
    }
    return r;
}

} // namespace strand
