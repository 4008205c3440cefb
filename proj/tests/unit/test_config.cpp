#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "phrasecom/config.hpp"
#include "phrasecom/error.hpp"

using namespace phrasecom;

TEST_CASE("defaults") {
    const RunConfig c;
    CHECK(c.compare.salience.k == 30);
    CHECK(c.compare.salience.mu == 3.0);
    CHECK(c.compare.solver.alpha == 100.0);
    CHECK(c.compare.solver.lambda == 0.099);
    CHECK(c.corpus.min_support == 10);
    CHECK(c.method == "cda");
    CHECK(validate(c).empty());
}

TEST_CASE("set_option parses values and rejects junk") {
    RunConfig c;
    set_option(c, "k", "12");
    set_option(c, "alpha", "50");
    set_option(c, "method", "twostep");
    set_option(c, "seed", "7");
    CHECK(c.compare.salience.k == 12);
    CHECK(c.compare.solver.alpha == 50.0);
    CHECK(c.method == "twostep");
    CHECK(c.seed == 7);
    CHECK_THROWS_AS(set_option(c, "k", "twelve"), ParameterError);
    CHECK_THROWS_AS(set_option(c, "alpha", "1.5x"), ParameterError);
    CHECK_THROWS_AS(set_option(c, "colour", "red"), ParameterError);
    for (const char* key : {"corpus", "index", "positives", "k", "mu", "alpha", "lambda", "gamma", "delta",
                            "method", "seed", "out"}) {
        const auto keys = config_keys();
        CHECK(std::find(keys.begin(), keys.end(), key) != keys.end());
    }
}

TEST_CASE("config text: comments, whitespace and errors") {
    RunConfig c;
    apply_config_text(c, "# comment\n  mu = 2.5  \n\nmin_support=4\n", "test.conf");
    CHECK(c.compare.salience.mu == 2.5);
    CHECK(c.corpus.min_support == 4);
    CHECK_THROWS_WITH_AS(apply_config_text(c, "mu 3\n", "test.conf"), doctest::Contains("test.conf:1"),
                         InputError);
    CHECK_THROWS_WITH_AS(apply_config_text(c, "\nbogus = 1\n", "test.conf"), doctest::Contains("test.conf:2"),
                         InputError);
    CHECK_THROWS_AS(apply_config_file(c, "/nonexistent/x.conf"), InputError);
}

TEST_CASE("validation reports the lambda bound") {
    RunConfig c;
    c.compare.solver.lambda = 0.1;
    CHECK_THROWS_AS(validate(c), ParameterError);
    c.compare.solver.allow_lambda_above_bound = true;
    CHECK_FALSE(validate(c).empty());
    RunConfig bad;
    bad.compare.salience.k = 0;
    CHECK_THROWS_AS(validate(bad), ParameterError);
}
