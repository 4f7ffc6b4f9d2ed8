#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qident/report.hpp"

using namespace qident;
using nlohmann::json;

TEST_CASE("registry")
{
    const auto& reg = registry();
    CHECK(reg.size() == 17);
    const std::vector<std::string> ids{"jackson8phi7", "bailey10phi9",   "bailey6psi6",       "ramanujan1psi1",
                                       "c1macdonald",  "flippedsummand", "bilateralfinite",   "3psi3delta0",
                                       "3psi3delta1",  "multijackson",   "simplifiedjackson", "duality",
                                       "flip",         "weyldegree",     "multilateralfinite", "multilateral3psi3",
                                       "summandinvariance"};
    for (const auto& id : ids) {
        const CaseInfo& c = find_case(id);
        CHECK(c.id == id);
        CHECK_FALSE(c.schema.empty());
        CHECK(c.default_tol > 0);
    }
    CHECK_THROWS_AS(find_case("nope"), ConfigError);
}

TEST_CASE("sampling is deterministic and gated")
{
    CHECK(sample_params("jackson8phi7", 7) == sample_params("jackson8phi7", 7));
    CHECK_FALSE(sample_params("jackson8phi7", 7) == sample_params("jackson8phi7", 8));
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto p = sample_params("bailey6psi6", s);
        auto val = [&](const char* k) {
            const auto& v = p.at(k);
            return std::holds_alternative<cplx>(v) ? std::get<cplx>(v) : cplx(0);
        };
        const cplx q = val("q"), a = val("a");
        cplx den(1);
        for (const char* k : {"b", "c", "d", "e"}) {
            const auto& v = p.at(k);
            den *= std::holds_alternative<cplx>(v) ? std::get<cplx>(v) : std::pow(q, double(std::get<QPow>(v).m));
        }
        CHECK(std::abs(q * a * a / den) <= 0.5 + 1e-12);
        for (const auto& [name, v] : sample_params("jackson8phi7", s))
            if (std::holds_alternative<cplx>(v) && name != "e") {
                CHECK(std::abs(std::get<cplx>(v)) >= 0.1 - 1e-12);
                CHECK(std::abs(std::get<cplx>(v)) <= 0.9 + 1e-12);
            }
    }
    // fixed values are honoured
    ParamMap fixed{{"n", 2L}};
    CHECK(std::get<long>(sample_params("jackson8phi7", 3, fixed).at("n")) == 2);
}

TEST_CASE("parameter encoding")
{
    CHECK(std::get<cplx>(param_from_json(ParamKind::Complex, json::array({0.3, -0.1}))) == cplx(0.3, -0.1));
    CHECK(std::get<cplx>(param_from_json(ParamKind::Complex, json(0.5))) == cplx(0.5));
    CHECK(std::get<QPow>(param_from_json(ParamKind::Complex, json{{"qpow", -2}})).m == -2);
    CHECK(std::get<Partition>(param_from_json(ParamKind::PartitionKind, json("[3,1]"))) == Partition{3, 1});
    CHECK(std::get<Partition>(param_from_json(ParamKind::PartitionKind, json::array({2, 2}))) == Partition{2, 2});
    CHECK_THROWS_AS(param_from_json(ParamKind::PartitionKind, json::array({1, 2})), ConfigError);
    CHECK_THROWS_AS(param_from_json(ParamKind::Integer, json(1.5)), ConfigError);
    CHECK_THROWS_AS(param_from_json(ParamKind::Complex, json("x")), ConfigError);
    for (const ParamValue& v : {ParamValue(cplx(0.1, 0.2)), ParamValue(3L), ParamValue(Partition{2, 1}),
                                ParamValue(QPow{4}), ParamValue(std::vector<cplx>{cplx(1), cplx(0, 2)})}) {
        const ParamKind k = std::holds_alternative<long>(v)                ? ParamKind::Integer
                            : std::holds_alternative<Partition>(v)         ? ParamKind::PartitionKind
                            : std::holds_alternative<std::vector<cplx>>(v) ? ParamKind::ComplexVector
                                                                           : ParamKind::Complex;
        CHECK(param_from_json(k, param_to_json(v)) == v);
    }
}

TEST_CASE("configuration errors surface before evaluation")
{
    CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"cases", json::array({json{{"case", "nope"}}})}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"cases", json::array({json{{"case", "flip"}, {"samples", 0}}})}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"cases", json::array({json{{"case", "flip"}, {"tol", -1}}})}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"cases", json::array({json{{"case", "flip"}, {"bogus", 1}}})}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"cases", json::array({json{{"case", "flip"}, {"params", {{"zz", 1}}}}})}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"precision", "quad"}, {"cases", json::array()}}), ConfigError);

    const auto empty = parse_config(json{{"cases", json::array()}});
    const auto runs = run_all(empty, 4);
    CHECK(runs.empty());
    CHECK(all_passed(runs));
    const json doc = report_document(runs, empty);
    CHECK(doc["summary"]["total"] == 0);
}

TEST_CASE("reports do not depend on thread count")
{
    json cases = json::array();
    for (const CaseInfo& c : registry()) cases.push_back(json{{"case", c.id}, {"samples", 2}});
    const RunConfig cfg = parse_config(json{{"seed", 5}, {"cases", cases}});
    const auto one = run_all(cfg, 1), many = run_all(cfg, 4);
    const std::string a = strip_timing(report_document(one, cfg)).dump(), b = strip_timing(report_document(many, cfg)).dump();
    CHECK(a == b);
    CHECK(all_passed(one));
    const json doc = report_document(one, cfg);
    CHECK(doc["summary"]["total"] == 34);
    CHECK(doc["summary"]["pass"].get<long>() + doc["summary"]["fail"].get<long>() + doc["summary"]["error"].get<long>()
          == 34);
    CHECK(doc["meta"]["version"] == kVersion);
    // ordering: by case id, then sample
    for (std::size_t i = 1; i < one.size(); ++i)
        CHECK(std::tie(one[i - 1].case_id, one[i - 1].sample) < std::tie(one[i].case_id, one[i].sample));
    CHECK(one[1].seed == one[0].seed + 1); // sample s draws with seed + s
    CHECK(one[1].sample == 1);

    const std::string csv = to_csv(one);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 35);
    CHECK(csv.rfind("case_id,sample,seed,status", 0) == 0);
}

TEST_CASE("report fields")
{
    const auto r = run_sample("c1macdonald", 1, 0, ParamMap{{"x", cplx(1)}}, 1e-12, Precision::Double);
    CHECK(r.status == Status::Error);
    CHECK_FALSE(r.message.empty());
    const json j = to_json(r);
    for (const char* k : {"case_id", "sample", "seed", "params", "lhs", "rhs", "abs_residual", "rel_residual", "tol",
                          "terms_used", "terminated", "status", "message", "aux", "elapsed_ms"})
        CHECK(j.contains(k));
    CHECK(j["status"] == "error");
    CHECK(strip_timing(json{{"runs", json::array({j})}})["runs"][0].contains("elapsed_ms") == false);

    const auto hp = run_sample("3psi3delta1", 1, 0, {}, 1e-30, Precision::High);
    CHECK(hp.status == Status::Pass);
}

TEST_CASE("ill-conditioned series sums are redone at 50 digits")
{
    // seed 134: the double-precision 8phi7 sum loses about eight digits
    const auto r = run_sample("jackson8phi7", 134, 0, {}, 1e-9, Precision::Double);
    CHECK(r.status == Status::Pass);
    CHECK(r.message.find("re-evaluated at 50 digits") != std::string::npos);
    CHECK(r.aux.at("cancellation").real() > 1e4);

    const auto plain = run_sample("jackson8phi7", 42, 0, {}, 1e-9, Precision::Double);
    CHECK(plain.message.empty());
    CHECK(plain.aux.at("cancellation").real() < 1e4);
}
