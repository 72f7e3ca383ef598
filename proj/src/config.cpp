#include "sqg/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sqg {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::runtime_error("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters after number '" + v + "'");
        return d;
    } catch (const std::logic_error&) {
        fail(line, "expected a number, got '" + v + "'");
    }
}

long long parse_int(const std::string& v, int line) {
    try {
        size_t pos = 0;
        long long d = std::stoll(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters after integer '" + v + "'");
        return d;
    } catch (const std::logic_error&) {
        fail(line, "expected an integer, got '" + v + "'");
    }
}

std::vector<int> parse_ladder(const std::string& v, int line) {
    std::vector<int> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) fail(line, "empty ladder entry");
        out.push_back(static_cast<int>(parse_int(tok, line)));
    }
    if (out.empty()) fail(line, "empty ladder");
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) fail(line, "ladder must be strictly increasing");
    return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (val.empty()) fail(lineno, "empty value for key '" + key + "'");

        if (key == "m") {
            c.m = static_cast<int>(parse_int(val, lineno));
            if (c.m < 1 || c.m > 100000) fail(lineno, "m out of range [1, 100000]");
        } else if (key == "oversampling") {
            c.oversampling = static_cast<int>(parse_int(val, lineno));
            if (c.oversampling < 1 || c.oversampling > 64)
                fail(lineno, "oversampling out of range [1, 64]");
        } else if (key == "T") {
            c.T = parse_double(val, lineno);
            if (!(c.T > 0.0) || c.T > 1e6) fail(lineno, "T out of range (0, 1e6]");
        } else if (key == "dt") {
            c.dt = parse_double(val, lineno);
            if (!(c.dt > 0.0) || c.dt > 1.0) fail(lineno, "dt out of range (0, 1]");
        } else if (key == "integrator") {
            if (val != "rk4" && val != "implicit_midpoint")
                fail(lineno, "integrator '" + val + "' not one of {rk4, implicit_midpoint}");
            c.integrator = val;
        } else if (key == "sample_stride") {
            c.sample_stride = static_cast<int>(parse_int(val, lineno));
            if (c.sample_stride < 1) fail(lineno, "sample_stride must be >= 1");
        } else if (key == "fixed_point_tol") {
            c.fixed_point_tol = parse_double(val, lineno);
            if (!(c.fixed_point_tol > 0.0) || c.fixed_point_tol > 1e-6)
                fail(lineno, "fixed_point_tol out of range (0, 1e-6]");
        } else if (key == "max_fixed_point_iters") {
            c.max_fixed_point_iters = static_cast<int>(parse_int(val, lineno));
            if (c.max_fixed_point_iters < 1) fail(lineno, "max_fixed_point_iters must be >= 1");
        } else if (key == "init") {
            if (val != "random_decay" && val != "single_mode")
                fail(lineno, "init '" + val + "' not one of {random_decay, single_mode}");
            c.init = val;
        } else if (key == "seed") {
            const long long s = parse_int(val, lineno);
            if (s < 0) fail(lineno, "seed must be nonnegative");
            c.seed = static_cast<std::uint64_t>(s);
        } else if (key == "beta") {
            c.beta = parse_double(val, lineno);
            if (c.beta < 0.0 || c.beta > 8.0) fail(lineno, "beta out of range [0, 8]");
        } else if (key == "amplitude") {
            c.amplitude = parse_double(val, lineno);
            if (!(c.amplitude > 0.0) || c.amplitude > 1e6)
                fail(lineno, "amplitude out of range (0, 1e6]");
        } else if (key == "mode_p") {
            c.mode_p = static_cast<int>(parse_int(val, lineno));
            if (c.mode_p < 1 || c.mode_p > 1000) fail(lineno, "mode_p out of range [1,1000]");
        } else if (key == "mode_q") {
            c.mode_q = static_cast<int>(parse_int(val, lineno));
            if (c.mode_q < 1 || c.mode_q > 1000) fail(lineno, "mode_q out of range [1,1000]");
        } else if (key == "rho") {
            c.rho = parse_double(val, lineno);
            if (!(c.rho > 0.0) || c.rho >= 1.5707963267948966)
                fail(lineno, "rho out of range (0, pi/2)");
        } else if (key == "center_x") {
            c.center_x = parse_double(val, lineno);
            if (!(c.center_x > 0.0) || c.center_x >= 3.141592653589793)
                fail(lineno, "center_x out of range (0, pi)");
        } else if (key == "center_y") {
            c.center_y = parse_double(val, lineno);
            if (!(c.center_y > 0.0) || c.center_y >= 3.141592653589793)
                fail(lineno, "center_y out of range (0, pi)");
        } else if (key == "ladder") {
            c.ladder = parse_ladder(val, lineno);
        } else if (key == "s") {
            c.s = parse_double(val, lineno);
            if (!(c.s > 0.0) || c.s >= 2.0) fail(lineno, "s out of range (0, 2)");
        } else if (key == "p") {
            if (val == "inf") {
                c.p_exponent = -1.0;
            } else {
                c.p_exponent = parse_double(val, lineno);
                if (c.p_exponent < 1.0) fail(lineno, "p must be >= 1 or 'inf'");
            }
        } else if (key == "dyadic_levels") {
            c.dyadic_levels = static_cast<int>(parse_int(val, lineno));
            if (c.dyadic_levels < 1 || c.dyadic_levels > 8)
                fail(lineno, "dyadic_levels out of range [1, 8]");
        } else if (key == "out_dir") {
            c.out_dir = val;
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }
    if (4 * c.m > 100000) fail(0, "m too large for the default oversampling");
    return c;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

std::string RunConfig::echo() const {
    char buf[256];
    std::string out;
    auto add = [&](const char* k, const std::string& v) {
        out += k;
        out += " = ";
        out += v;
        out += "\n";
    };
    auto addd = [&](const char* k, double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        add(k, buf);
    };
    add("m", std::to_string(m));
    add("oversampling", std::to_string(oversampling));
    addd("T", T);
    addd("dt", dt);
    add("integrator", integrator);
    add("sample_stride", std::to_string(sample_stride));
    addd("fixed_point_tol", fixed_point_tol);
    add("max_fixed_point_iters", std::to_string(max_fixed_point_iters));
    add("init", init);
    add("seed", std::to_string(seed));
    addd("beta", beta);
    addd("amplitude", amplitude);
    add("mode_p", std::to_string(mode_p));
    add("mode_q", std::to_string(mode_q));
    addd("rho", rho);
    addd("center_x", center_x);
    addd("center_y", center_y);
    std::string lad;
    for (size_t i = 0; i < ladder.size(); ++i) lad += (i ? "," : "") + std::to_string(ladder[i]);
    add("ladder", lad);
    addd("s", s);
    add("p", p_exponent < 0.0 ? "inf" : [&] {
        std::snprintf(buf, sizeof buf, "%.17g", p_exponent);
        return std::string(buf);
    }());
    add("dyadic_levels", std::to_string(dyadic_levels));
    add("out_dir", out_dir);
    return out;
}

}  // namespace sqg
