#include <doctest.h>

#include <sstream>

#include "golden.hpp"
#include "mcycle/report.hpp"

using namespace mcycle;

namespace {

ExperimentConfig demo_config() {
    ExperimentConfig c;
    c.line = line_params_for_line(1, 50);
    c.k = 3;
    c.M = 4;
    c.trials = 100000;
    c.seed = 1;
    return c;
}

}  // namespace

TEST_CASE("empty stats give a header-only CSV") {
    std::ostringstream os;
    write_csv(os, SummaryStats{});
    CHECK(os.str() ==
          "config_hash,line,n,k,M,s,delta,family,accepted_count,trial_count,estimate,ci_lo,ci_hi,bound_value,bound_asserted\n");
    std::istringstream is(os.str());
    CHECK(read_csv(is).empty());
}

TEST_CASE("CSV round trip") {
    auto c = demo_config();
    c.trials = 2000;
    const auto st = run_conditional(c);
    std::vector<CsvRow> rows = csv_rows(st);
    REQUIRE(rows.size() == st.estimates.size());
    rows.push_back({"h", "1", "2", "3", "4", "a,b", "say \"hi\"", "x", "0", "0", "0", "0", "1", "", ""});
    std::stringstream ss;
    ss << "# mcycle experiment {}\n";
    write_csv(ss, rows);
    const auto back = read_csv(ss);
    CHECK(back == rows);
    for (std::size_t i = 0; i < st.estimates.size(); ++i) {
        const auto& e = st.estimates[i];
        CHECK(back[i][7] == e.name);
        CHECK(back[i][8] == std::to_string(e.value.successes));
        CHECK(back[i][9] == std::to_string(e.value.trials));
        if (e.bound) {
            CHECK(back[i][13].substr(0, 2) == (e.bound_is_floor ? ">=" : "<="));
            CHECK((back[i][14] == "true" || back[i][14] == "false"));
        } else {
            CHECK(back[i][13].empty());
        }
    }
}

TEST_CASE("CSV parse errors") {
    std::istringstream bad_header("a,b,c\n");
    CHECK_THROWS_AS(read_csv(bad_header), Error);
    std::ostringstream os;
    write_csv_header(os);
    std::istringstream short_row(os.str() + "1,2,3\n");
    CHECK_THROWS_AS(read_csv(short_row), Error);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_csv(empty), Error);
}

TEST_CASE("config hash") {
    auto a = demo_config();
    auto b = a;
    b.workers = 7;
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b.seed = 2;
    CHECK(config_hash(a) != config_hash(b));
    b = a;
    b.s = Rational(2, 3);
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("demo config matches the golden CSV") {
    const auto st = run_conditional(demo_config());
    std::ostringstream os;
    write_csv(os, st);
    std::string diag;
    CHECK_MESSAGE(matches_golden("conditional_line1_n50_k3.csv", os.str(), diag), diag);
}

TEST_CASE("JSON records") {
    auto c = demo_config();
    c.trials = 500;
    const auto st = run_conditional(c);
    const auto j = stats_json(st);
    CHECK(j["trials"] == 500);
    CHECK(j["config_hash"] == config_hash(c));
    CHECK(j["config"]["line"]["m"] == 50);
    std::uint64_t total = 0;
    for (auto& [name, row] : j["contingency"].items()) total += row["accepted"].get<std::uint64_t>() + row["rejected"].get<std::uint64_t>();
    CHECK(total == 500);
    CHECK(j["estimates"].size() == st.estimates.size());

    const auto e = exact_conditional(line_params_for_line(3, 8), 2, 4, Rational(2, 3));
    const auto ej = exact_json(e);
    CHECK(ej["group_order"] == "40320");
    CHECK(ej["rho_true"] == to_string(e.rho_true));
    CHECK(parse_rational(ej["accept"].get<std::string>()) == e.accept);
}
