#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cstring>
#include <random>
#include <set>

#include <json.hpp>

#include "sedres/report.hpp"
#include "sedres/verify.hpp"

using namespace sedres;

TEST_CASE("pass rule per tolerance mode") {
    CHECK(make_check("a", 1.05, 1.0, 0.05 + 1e-15, ToleranceMode::absolute, "p").pass);
    CHECK_FALSE(make_check("a", 1.06, 1.0, 0.05, ToleranceMode::absolute, "p").pass);
    CHECK(make_check("r", 10.4, 10.0, 0.05, ToleranceMode::relative, "p").pass);
    CHECK_FALSE(make_check("r", 10.6, 10.0, 0.05, ToleranceMode::relative, "p").pass);
    CHECK(make_check("i", 3.0, 1.0, 0.0, ToleranceMode::info, "p").pass);
    CHECK_FALSE(make_check("nan", std::nan(""), 1.0, 1.0, ToleranceMode::absolute, "p").pass);
    CHECK(make_check("zero", 0.0, 0.0, 0.0, ToleranceMode::relative, "p").pass);

    const auto c = make_check("c", std::complex<double>(0.0, 1.0005), {0.0, 1.0}, 1e-3, ToleranceMode::relative, "p");
    CHECK(c.is_complex);
    CHECK(c.pass);
    CHECK(c.deviation() == doctest::Approx(5e-4));
}

TEST_CASE("pass agrees with the deviation for random entries") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 2000; ++i) {
        const double v = u(gen), r = u(gen), tol = std::abs(u(gen));
        for (auto mode : {ToleranceMode::absolute, ToleranceMode::relative}) {
            auto e = make_check("x", v, r, tol, mode, "p");
            const double d = mode == ToleranceMode::absolute ? std::abs(v - r) : std::abs(v - r) / std::abs(r);
            CHECK(e.pass == (d <= tol));
            e.tolerance = 0.0;
            evaluate(e);
            CHECK(e.pass == (v == r));
        }
    }
}

TEST_CASE("summary counts and lookup") {
    CheckReport r;
    r.entries.push_back(make_check("ok", 1.0, 1.0, 0.0, ToleranceMode::absolute, "p"));
    r.entries.push_back(make_check("bad", 2.0, 1.0, 0.5, ToleranceMode::absolute, "p"));
    r.entries.push_back(make_check("note", 2.0, 1.0, 0.0, ToleranceMode::info, "p"));
    CHECK(r.passed() == 1);
    CHECK(r.failed() == 1);
    CHECK(r.informational() == 1);
    CHECK_FALSE(r.all_passed());
    REQUIRE(r.find("bad") != nullptr);
    CHECK(r.find("bad")->value.real() == 2.0);
    CHECK(r.find("missing") == nullptr);

    const auto j = nlohmann::json::parse(report_json(r));
    CHECK(j["summary"]["total"] == 3);
    CHECK(j["summary"]["failed"] == 1);
    CHECK(j["entries"][1]["name"] == "bad");
    CHECK(j["entries"][1]["pass"] == false);
    CHECK(j["entries"][1]["mode"] == "absolute");
    CHECK(j["entries"][0]["provenance"] == "p");
    CHECK(report_json(r) == report_json(r));

    const auto table = report_table(r);
    CHECK(table.find("bad") != std::string::npos);
    CHECK(table.find("FAIL") != std::string::npos);
}

TEST_CASE("numbers print as the shortest round-tripping decimal") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1e-12) == "1e-12");
    CHECK(format_double(-3.0) == "-3");
    std::mt19937_64 gen(11);
    for (int i = 0; i < 5000; ++i) {
        double d;
        const auto bits = gen();
        std::memcpy(&d, &bits, sizeof d);
        if (!std::isfinite(d)) continue;
        const std::string text = format_double(d);
        double back = 0.0;
        std::from_chars(text.data(), text.data() + text.size(), back);
        CHECK(back == d);
    }
}

TEST_CASE("verify registry covers every acceptance criterion") {
    const auto& reg = verify_registry();
    CHECK(reg.size() >= 12);
    std::set<int> criteria;
    std::set<std::string> names;
    for (const auto& c : reg) {
        criteria.insert(c.criterion);
        CHECK(names.insert(c.name).second);
        CHECK(c.tolerance >= 0.0);
    }
    CHECK(criteria.size() == 12);
    CHECK(*criteria.begin() == 1);
    CHECK(*criteria.rbegin() == 12);
    CHECK(default_tolerances().size() == reg.size());
}
