#include "sqz/config.hpp"

#include <cmath>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace sqz {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& what)
{
    throw ConfigError("config key '" + key + "': " + what);
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object())
        fail(where, "expected an object");
    for (const auto& [k, v] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || k == a;
        if (!ok)
            fail(where.empty() ? k : where + "." + k, "unknown key");
    }
}

std::string join(const std::string& where, const std::string& key)
{
    return where.empty() ? key : where + "." + key;
}

// Numbers may be written as JSON numbers or as "inf"/"-inf"/"nan" strings.
double as_number(const json& v, const std::string& key)
{
    if (v.is_number())
        return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "infinity")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
    }
    fail(key, "expected a number");
}

json number_to_json(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    return x;
}

void read(const json& obj, const std::string& where, const char* key, double& out)
{
    if (obj.contains(key))
        out = as_number(obj.at(key), join(where, key));
}

void read(const json& obj, const std::string& where, const char* key, std::size_t& out)
{
    if (!obj.contains(key))
        return;
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        fail(join(where, key), "expected a non-negative integer");
    out = v.get<std::size_t>();
}

void read(const json& obj, const std::string& where, const char* key, std::uint64_t& out, int)
{
    if (!obj.contains(key))
        return;
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        fail(join(where, key), "expected a non-negative integer");
    out = v.get<std::uint64_t>();
}

void read(const json& obj, const std::string& where, const char* key, std::string& out)
{
    if (!obj.contains(key))
        return;
    if (!obj.at(key).is_string())
        fail(join(where, key), "expected a string");
    out = obj.at(key).get<std::string>();
}

void read(const json& obj, const std::string& where, const char* key, bool& out)
{
    if (!obj.contains(key))
        return;
    if (!obj.at(key).is_boolean())
        fail(join(where, key), "expected true or false");
    out = obj.at(key).get<bool>();
}

std::vector<double> read_axis(const json& v, const std::string& key)
{
    if (v.is_number() || v.is_string())
        return {as_number(v, key)};
    if (v.is_array()) {
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i)
            out.push_back(as_number(v[i], key + "[" + std::to_string(i) + "]"));
        return out;
    }
    if (v.is_object()) {
        if (v.contains("values")) {
            check_keys(v, key, {"values"});
            return read_axis(v.at("values"), key + ".values");
        }
        check_keys(v, key, {"min", "max", "count", "log"});
        double lo = 0.0, hi = 0.0;
        std::size_t count = 1;
        bool log = false;
        if (!v.contains("min") || !v.contains("max") || !v.contains("count"))
            fail(key, "range needs min, max and count");
        read(v, key, "min", lo);
        read(v, key, "max", hi);
        read(v, key, "count", count);
        read(v, key, "log", log);
        if (count == 0)
            fail(key + ".count", "must be >= 1");
        if (log && (lo <= 0.0 || hi <= 0.0))
            fail(key, "log range needs positive bounds");
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
            out[i] = log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
        }
        return out;
    }
    fail(key, "expected a number, a list or a {min, max, count} range");
}

json axis_to_json(const std::vector<double>& values)
{
    json a = json::array();
    for (double v : values)
        a.push_back(number_to_json(v));
    return a;
}

} // namespace

json to_json(const RunConfig& c)
{
    json j;
    j["bath"] = {{"gamma", c.bath.gamma}, {"epsilon", c.bath.epsilon}, {"phi", c.bath.phi}, {"omega_L", c.bath.omega_L}};
    j["drive"] = {{"Omega", c.drive.Omega}, {"Delta", c.drive.Delta}};
    if (c.shifts.explicit_shifts)
        j["shifts"] = {{"delta_N", c.shifts.explicit_shifts->delta_N}, {"delta_M", c.shifts.explicit_shifts->delta_M}};
    else
        j["shifts"] = {{"preset", c.shifts.preset}};
    j["schedule"] = {{"t_i", c.schedule.t_i}, {"n", number_to_json(c.schedule.n)}};
    j["spectrum"] = {{"x_min", c.spectrum.x_min}, {"x_max", c.spectrum.x_max}, {"count", c.spectrum.count}};
    j["evolve"] = {{"initial", c.evolve.initial},
                   {"t_start", c.evolve.t_start},
                   {"t_end", c.evolve.t_end},
                   {"samples", c.evolve.samples}};
    if (c.evolve.initial == "bloch") {
        j["evolve"]["s_minus_re"] = c.evolve.bloch.s_minus.real();
        j["evolve"]["s_minus_im"] = c.evolve.bloch.s_minus.imag();
        j["evolve"]["s_z"] = c.evolve.bloch.s_z;
    }
    j["sweep"] = {{"gamma", axis_to_json(c.sweep.gamma)},     {"epsilon", axis_to_json(c.sweep.epsilon)},
                  {"Delta", axis_to_json(c.sweep.Delta)},     {"Omega", axis_to_json(c.sweep.Omega)},
                  {"phi", axis_to_json(c.sweep.phi)},         {"omega_L", axis_to_json(c.sweep.omega_L)},
                  {"n", axis_to_json(c.sweep.n)},             {"phi_profile", c.sweep.phi_profile}};
    json davies = json::array();
    for (const auto& [r, de] : c.oracle.davies)
        davies.push_back({{"R", r}, {"Delta_E", de}});
    j["oracle"] = {{"Gamma", c.oracle.Gamma},
                   {"davies", davies},
                   {"t_max", c.oracle.t_max},
                   {"time_samples", c.oracle.time_samples},
                   {"dimension_cap", c.oracle.dimension_cap},
                   {"rate_draws", c.oracle.rate_draws},
                   {"seed", c.oracle.seed}};
    j["output"] = {{"path", c.output.path}, {"format", c.output.format}};
    j["tolerance"] = c.tolerance;
    j["mode"] = to_string(c.mode);
    j["threads"] = c.threads;
    return j;
}

RunConfig config_from_json(const json& j)
{
    RunConfig c;
    check_keys(j, "", {"bath", "drive", "shifts", "schedule", "spectrum", "evolve", "sweep", "oracle", "output",
                       "tolerance", "mode", "threads"});

    if (j.contains("bath")) {
        const auto& b = j.at("bath");
        check_keys(b, "bath", {"gamma", "epsilon", "phi", "omega_L"});
        read(b, "bath", "gamma", c.bath.gamma);
        read(b, "bath", "epsilon", c.bath.epsilon);
        read(b, "bath", "phi", c.bath.phi);
        read(b, "bath", "omega_L", c.bath.omega_L);
    }
    if (j.contains("drive")) {
        const auto& d = j.at("drive");
        check_keys(d, "drive", {"Omega", "Delta"});
        read(d, "drive", "Omega", c.drive.Omega);
        read(d, "drive", "Delta", c.drive.Delta);
    }
    if (j.contains("shifts")) {
        const auto& s = j.at("shifts");
        if (s.is_string()) {
            c.shifts.preset = s.get<std::string>();
        } else {
            check_keys(s, "shifts", {"preset", "delta_N", "delta_M"});
            if (s.contains("preset") && (s.contains("delta_N") || s.contains("delta_M")))
                fail("shifts", "give either a preset or explicit delta_N/delta_M, not both");
            read(s, "shifts", "preset", c.shifts.preset);
            if (s.contains("delta_N") || s.contains("delta_M")) {
                SqueezingShifts x;
                read(s, "shifts", "delta_N", x.delta_N);
                read(s, "shifts", "delta_M", x.delta_M);
                c.shifts.explicit_shifts = x;
            }
        }
        if (!c.shifts.explicit_shifts && c.shifts.preset != "zero" && c.shifts.preset != "asymptotic")
            fail("shifts.preset", "must be 'zero' or 'asymptotic'");
    }
    if (j.contains("schedule")) {
        const auto& s = j.at("schedule");
        check_keys(s, "schedule", {"t_i", "n", "t_f"});
        read(s, "schedule", "t_i", c.schedule.t_i);
        read(s, "schedule", "n", c.schedule.n);
        if (s.contains("t_f")) {
            // explicit window: n = (t_f - t_i) * omega_L must come out integral
            double t_f = 0.0;
            read(s, "schedule", "t_f", t_f);
            const double n = (t_f - c.schedule.t_i) * c.bath.omega_L;
            if (!(n >= 1.0) || std::abs(n - std::round(n)) > 1e-9 * n)
                fail("schedule.t_f", "(t_f - t_i) * omega_L must be a positive integer");
            if (s.contains("n") && std::round(n) != c.schedule.n)
                fail("schedule.t_f", "inconsistent with schedule.n");
            c.schedule.n = std::round(n);
        }
        if (!(c.schedule.n >= 1.0) || (std::isfinite(c.schedule.n) && c.schedule.n != std::floor(c.schedule.n)))
            fail("schedule.n", "must be a positive integer or \"inf\"");
    }
    if (j.contains("spectrum")) {
        const auto& s = j.at("spectrum");
        check_keys(s, "spectrum", {"x_min", "x_max", "count"});
        read(s, "spectrum", "x_min", c.spectrum.x_min);
        read(s, "spectrum", "x_max", c.spectrum.x_max);
        read(s, "spectrum", "count", c.spectrum.count);
        if (c.spectrum.count < 1)
            fail("spectrum.count", "must be >= 1");
    }
    if (j.contains("evolve")) {
        const auto& e = j.at("evolve");
        check_keys(e, "evolve", {"initial", "t_start", "t_end", "samples", "s_minus_re", "s_minus_im", "s_z"});
        read(e, "evolve", "initial", c.evolve.initial);
        read(e, "evolve", "t_start", c.evolve.t_start);
        read(e, "evolve", "t_end", c.evolve.t_end);
        read(e, "evolve", "samples", c.evolve.samples);
        const auto& init = c.evolve.initial;
        if (init != "excited" && init != "ground" && init != "mixed" && init != "x" && init != "y" &&
            init != "bloch")
            fail("evolve.initial", "must be one of excited, ground, mixed, x, y, bloch");
        if (init == "bloch") {
            double re = 0.0, im = 0.0, z = 0.0;
            read(e, "evolve", "s_minus_re", re);
            read(e, "evolve", "s_minus_im", im);
            read(e, "evolve", "s_z", z);
            c.evolve.bloch = {complex(re, im), z};
        } else if (e.contains("s_minus_re") || e.contains("s_minus_im") || e.contains("s_z")) {
            fail("evolve.s_z", "Bloch components require initial = \"bloch\"");
        }
        if (c.evolve.samples < 2)
            fail("evolve.samples", "must be >= 2");
    }
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        check_keys(s, "sweep", {"gamma", "epsilon", "Delta", "Omega", "phi", "omega_L", "n", "phi_profile"});
        auto axis = [&](const char* key, std::vector<double>& out) {
            if (s.contains(key))
                out = read_axis(s.at(key), std::string("sweep.") + key);
        };
        axis("gamma", c.sweep.gamma);
        axis("epsilon", c.sweep.epsilon);
        axis("Delta", c.sweep.Delta);
        axis("Omega", c.sweep.Omega);
        axis("phi", c.sweep.phi);
        axis("omega_L", c.sweep.omega_L);
        axis("n", c.sweep.n);
        read(s, "sweep", "phi_profile", c.sweep.phi_profile);
    }
    if (j.contains("oracle")) {
        const auto& o = j.at("oracle");
        check_keys(o, "oracle", {"Gamma", "davies", "t_max", "time_samples", "dimension_cap", "rate_draws", "seed"});
        read(o, "oracle", "Gamma", c.oracle.Gamma);
        read(o, "oracle", "t_max", c.oracle.t_max);
        read(o, "oracle", "time_samples", c.oracle.time_samples);
        read(o, "oracle", "dimension_cap", c.oracle.dimension_cap);
        read(o, "oracle", "rate_draws", c.oracle.rate_draws);
        read(o, "oracle", "seed", c.oracle.seed, 0);
        if (o.contains("davies")) {
            const auto& d = o.at("davies");
            if (!d.is_array())
                fail("oracle.davies", "expected a list of {R, Delta_E}");
            c.oracle.davies.clear();
            for (std::size_t i = 0; i < d.size(); ++i) {
                const std::string key = "oracle.davies[" + std::to_string(i) + "]";
                check_keys(d[i], key, {"R", "Delta_E"});
                if (!d[i].contains("R") || !d[i].at("R").is_number_integer())
                    fail(key + ".R", "expected an integer");
                double de = 0.0;
                if (!d[i].contains("Delta_E"))
                    fail(key + ".Delta_E", "missing");
                read(d[i], key, "Delta_E", de);
                c.oracle.davies.emplace_back(d[i].at("R").get<int>(), de);
            }
        }
    }
    if (j.contains("output")) {
        const auto& o = j.at("output");
        check_keys(o, "output", {"path", "format"});
        read(o, "output", "path", c.output.path);
        read(o, "output", "format", c.output.format);
    }
    if (c.output.format != "csv" && c.output.format != "json")
        fail("output.format", "must be csv or json");
    read(j, "", "tolerance", c.tolerance);
    if (!(c.tolerance > 0.0))
        fail("tolerance", "must be > 0");
    if (j.contains("mode")) {
        std::string m;
        read(j, "", "mode", m);
        if (m != "paper" && m != "derived")
            fail("mode", "must be paper or derived");
        c.mode = parse_condition_mode(m);
    }
    if (j.contains("threads")) {
        if (!j.at("threads").is_number_integer() || j.at("threads").get<long long>() < 0)
            fail("threads", "expected a non-negative integer");
        c.threads = j.at("threads").get<unsigned>();
    }
    return c;
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

json parse_scalar(const std::string& text)
{
    const auto v = json::parse(text, nullptr, false);
    if (!v.is_discarded())
        return v;
    return text;
}

json& walk(json& root, const std::string& dotted, const std::string& context)
{
    json* node = &root;
    std::stringstream ss(dotted);
    std::string part;
    while (std::getline(ss, part, '.')) {
        part = trim(part);
        if (part.empty())
            fail(context, "empty path component");
        if (!node->is_object())
            *node = json::object();
        node = &(*node)[part];
    }
    return *node;
}

} // namespace

namespace {

// drops a trailing "; ..." or "# ..." comment that follows whitespace, outside quotes
std::string strip_inline_comment(const std::string& line)
{
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (ch == '"' && (i == 0 || line[i - 1] != '\\'))
            quoted = !quoted;
        else if (!quoted && (ch == ';' || ch == '#') && i > 0 && (line[i - 1] == ' ' || line[i - 1] == '\t'))
            return line.substr(0, i);
    }
    return line;
}

} // namespace

json parse_ini(const std::string& text)
{
    json root = json::object();
    std::string section;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';')
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        line = trim(strip_inline_comment(line));
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string path = section.empty() ? key : section + "." + key;
        walk(root, path, path) = parse_scalar(trim(line.substr(eq + 1)));
    }
    return root;
}

json parse_config_text(const std::string& text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("malformed JSON: ") + e.what());
        }
    }
    return parse_ini(text);
}

void apply_override(json& tree, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override '" + assignment + "' must look like key.path=value");
    const std::string path = trim(assignment.substr(0, eq));
    walk(tree, path, path) = parse_scalar(trim(assignment.substr(eq + 1)));
}

std::string default_config_help()
{
    return to_json(RunConfig{}).dump(2);
}

} // namespace sqz
