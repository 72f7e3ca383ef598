#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sqg {

// Line-based "key = value" run configuration. '#' starts a comment. Unknown
// keys, malformed lines and out-of-range values are rejected with the line
// number (fail closed).
struct RunConfig {
    // discretization
    int m = 32;
    int oversampling = 8;          // M = oversampling * m for the commutator lab
    double T = 1.0;
    double dt = 1e-2;
    std::string integrator = "implicit_midpoint";  // or "rk4"
    int sample_stride = 10;
    double fixed_point_tol = 1e-13;
    int max_fixed_point_iters = 200;

    // initial data
    std::string init = "random_decay";  // random_decay | single_mode
    std::uint64_t seed = 1;
    double beta = 1.0;
    double amplitude = 1.0;
    int mode_p = 1, mode_q = 1;

    // test function
    double rho = 1.0471975511965976;    // pi/3
    double center_x = 1.5707963267948966, center_y = 1.5707963267948966;

    // studies
    std::vector<int> ladder = {8, 16, 32, 64};
    double s = 1.0;
    double p_exponent = -1.0;           // -1 encodes p = infinity
    int dyadic_levels = 5;              // d(x) = pi/4 ... pi/2^(levels+1)

    std::string out_dir = "out";

    std::string echo() const;  // effective config, parseable by parse_config
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

}  // namespace sqg
