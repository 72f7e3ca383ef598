#include <doctest.h>

#include <stdexcept>

#include "sqg/config.hpp"

using namespace sqg;

TEST_CASE("minimal config fills defaults and echoes every effective value") {
    RunConfig c = parse_config_text("m = 12\nT = 2.5\ndt = 0.005\n");
    CHECK(c.m == 12);
    CHECK(c.T == 2.5);
    CHECK(c.dt == 0.005);
    CHECK(c.integrator == "implicit_midpoint");  // default
    CHECK(c.seed == 1);
    const std::string echo = c.echo();
    for (const char* key : {"m = ", "T = ", "dt = ", "integrator = ", "seed = ", "ladder = ",
                            "rho = ", "s = ", "p = ", "out_dir = "})
        CHECK(echo.find(key) != std::string::npos);
}

TEST_CASE("round-trip: parsing the echo reproduces the config") {
    RunConfig a = parse_config_text(
        "m = 24\nT = 3\ndt = 0.02\nintegrator = rk4\nseed = 99\nbeta = 1.5\n"
        "ladder = 4,8,16\ns = 0.75\np = 4\nrho = 0.9\n");
    RunConfig b = parse_config_text(a.echo());
    CHECK(a.m == b.m);
    CHECK(a.T == b.T);
    CHECK(a.dt == b.dt);
    CHECK(a.integrator == b.integrator);
    CHECK(a.seed == b.seed);
    CHECK(a.beta == b.beta);
    CHECK(a.ladder == b.ladder);
    CHECK(a.s == b.s);
    CHECK(a.p_exponent == b.p_exponent);
    CHECK(a.rho == b.rho);
    CHECK(a.echo() == b.echo());
}

TEST_CASE("unknown keys are rejected with the line number") {
    try {
        parse_config_text("m = 4\nwobble = 3\n");
        FAIL("expected rejection");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("wobble") != std::string::npos);
    }
}

TEST_CASE("invalid integrator names the valid set") {
    try {
        parse_config_text("integrator = rk5\n");
        FAIL("expected rejection");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("rk4") != std::string::npos);
        CHECK(msg.find("implicit_midpoint") != std::string::npos);
    }
}

TEST_CASE("out-of-range and malformed values") {
    CHECK_THROWS(parse_config_text("dt = 0\n"));
    CHECK_THROWS(parse_config_text("dt = -0.1\n"));
    CHECK_THROWS(parse_config_text("m = 0\n"));
    CHECK_THROWS(parse_config_text("s = 2.0\n"));
    CHECK_THROWS(parse_config_text("rho = 2.0\n"));
    CHECK_THROWS(parse_config_text("ladder = 8,8\n"));
    CHECK_THROWS(parse_config_text("m = twelve\n"));
    CHECK_THROWS(parse_config_text("m\n"));
    CHECK_THROWS(parse_config_text("m =\n"));
    CHECK_THROWS(parse_config_text("p = 0.5\n"));
}

TEST_CASE("comments and blank lines are ignored; p = inf supported") {
    RunConfig c = parse_config_text("# study setup\n\nm = 6  # six modes\np = inf\n");
    CHECK(c.m == 6);
    CHECK(c.p_exponent == -1.0);
    CHECK(parse_config_text(c.echo()).p_exponent == -1.0);
}
