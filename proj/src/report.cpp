#include "qident/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

namespace qident {

using nlohmann::json;

namespace {

cplx complex_from_json(const json& j)
{
    if (j.is_number()) return cplx(j.get<double>());
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw ConfigError("expected a complex number [re, im], got " + j.dump());
}

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

} // namespace

ParamValue param_from_json(ParamKind kind, const json& j)
{
    switch (kind) {
    case ParamKind::Integer:
        if (j.is_number_integer()) return j.get<long>();
        throw ConfigError("expected an integer, got " + j.dump());
    case ParamKind::Complex:
        if (j.is_object()) {
            if (j.size() == 1 && j.contains("qpow") && j["qpow"].is_number_integer()) return QPow{j["qpow"].get<long>()};
            throw ConfigError("expected {\"qpow\": m}, got " + j.dump());
        }
        return complex_from_json(j);
    case ParamKind::PartitionKind:
        if (j.is_string()) return Partition::parse(j.get<std::string>());
        if (j.is_array()) {
            std::vector<long> parts;
            for (const json& e : j) {
                if (!e.is_number_integer()) throw ConfigError("partition parts must be integers: " + j.dump());
                parts.push_back(e.get<long>());
            }
            try {
                return Partition(parts);
            } catch (const NotAPartition& e) {
                throw ConfigError(e.what());
            }
        }
        throw ConfigError("expected a partition, got " + j.dump());
    case ParamKind::ComplexVector: {
        if (!j.is_array()) throw ConfigError("expected a list of complex numbers, got " + j.dump());
        std::vector<cplx> v;
        for (const json& e : j) v.push_back(complex_from_json(e));
        return v;
    }
    }
    throw ConfigError("unknown parameter kind");
}

json param_to_json(const ParamValue& v)
{
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, long>)
                return x;
            else if constexpr (std::is_same_v<T, cplx>)
                return complex_to_json(x);
            else if constexpr (std::is_same_v<T, Partition>)
                return x.str();
            else if constexpr (std::is_same_v<T, QPow>)
                return json{{"qpow", x.m}};
            else {
                json a = json::array();
                for (const cplx& z : x) a.push_back(complex_to_json(z));
                return a;
            }
        },
        v);
}

ParamMap params_from_json(const std::string& case_id, const json& obj)
{
    if (!obj.is_object()) throw ConfigError("params must be an object");
    const CaseInfo& info = find_case(case_id);
    ParamMap out;
    for (const auto& [name, value] : obj.items()) {
        auto it = std::find_if(info.schema.begin(), info.schema.end(), [&](const ParamSpec& s) { return s.name == name; });
        if (it == info.schema.end()) throw ConfigError("case '" + case_id + "' has no parameter '" + name + "'");
        out[name] = param_from_json(it->kind, value);
    }
    return out;
}

Precision parse_precision(const std::string& s)
{
    if (s == "double") return Precision::Double;
    if (s == "high") return Precision::High;
    throw ConfigError("precision must be 'double' or 'high', got '" + s + "'");
}

const char* to_string(Precision p) { return p == Precision::High ? "high" : "double"; }

Precision precision_from_env()
{
    const char* v = std::getenv("QIDENT_PRECISION");
    return (v && std::string(v) == "high") ? Precision::High : Precision::Double;
}

RunConfig parse_config(const json& j)
{
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig cfg;
    cfg.precision = precision_from_env();
    try {
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("precision")) cfg.precision = parse_precision(j.at("precision").get<std::string>());
        if (!j.contains("cases") || !j.at("cases").is_array()) throw ConfigError("config needs a 'cases' array");
        for (const json& c : j.at("cases")) {
            CaseRequest r;
            if (!c.is_object() || !c.contains("case")) throw ConfigError("each case needs a 'case' id");
            r.case_id = c.at("case").get<std::string>();
            const CaseInfo& info = find_case(r.case_id);
            r.seed = c.contains("seed") ? c.at("seed").get<std::uint64_t>() : cfg.seed;
            r.samples = c.contains("samples") ? c.at("samples").get<long>() : 1;
            r.tol = c.contains("tol") ? c.at("tol").get<double>() : info.default_tol;
            if (r.samples < 1) throw ConfigError("samples must be >= 1");
            if (!(r.tol > 0)) throw ConfigError("tol must be positive");
            if (c.contains("params")) r.params = params_from_json(r.case_id, c.at("params"));
            for (const auto& [k, v] : c.items())
                if (k != "case" && k != "seed" && k != "samples" && k != "tol" && k != "params")
                    throw ConfigError("unknown case field '" + k + "'");
            cfg.cases.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return cfg;
}

std::vector<IdentityReport> run_all(const RunConfig& cfg, unsigned parallelism)
{
    struct Job {
        std::size_t req;
        long sample;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < cfg.cases.size(); ++i)
        for (long s = 0; s < cfg.cases[i].samples; ++s) jobs.push_back({i, s});

    // Config errors surface before any work starts.
    for (const CaseRequest& r : cfg.cases) validate_params(r.case_id, r.params);

    std::vector<IdentityReport> out(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= jobs.size()) return;
            const CaseRequest& r = cfg.cases[jobs[k].req];
            try {
                out[k] = run_sample(r.case_id, r.seed, jobs[k].sample, r.params, r.tol, cfg.precision);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
                next = jobs.size();
                return;
            }
        }
    };
    const unsigned nt = std::max(1u, std::min<unsigned>(parallelism, static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < nt; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::stable_sort(out.begin(), out.end(), [](const IdentityReport& a, const IdentityReport& b) {
        return std::tie(a.case_id, a.sample) < std::tie(b.case_id, b.sample);
    });
    return out;
}

json to_json(const IdentityReport& r)
{
    json params = json::object();
    for (const auto& [k, v] : r.params) params[k] = param_to_json(v);
    json aux = json::object();
    for (const auto& [k, v] : r.aux) aux[k] = complex_to_json(v);
    return json{{"case_id", r.case_id},
                {"sample", r.sample},
                {"seed", r.seed},
                {"params", params},
                {"lhs", complex_to_json(r.lhs)},
                {"rhs", complex_to_json(r.rhs)},
                {"abs_residual", r.abs_residual},
                {"rel_residual", r.rel_residual},
                {"tol", r.tol},
                {"terms_used", r.terms_used},
                {"terminated", r.terminated},
                {"status", to_string(r.status)},
                {"message", r.message},
                {"aux", aux},
                {"elapsed_ms", r.elapsed_ms}};
}

namespace {

std::string utc_timestamp()
{
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

} // namespace

json report_document(const std::vector<IdentityReport>& runs, const RunConfig& cfg)
{
    json list = json::array();
    long pass = 0, fail = 0, error = 0;
    for (const IdentityReport& r : runs) {
        list.push_back(to_json(r));
        (r.status == Status::Pass ? pass : r.status == Status::Fail ? fail : error) += 1;
    }
    return json{{"meta",
                 {{"version", kVersion},
                  {"timestamp", utc_timestamp()},
                  {"seed", cfg.seed},
                  {"precision", to_string(cfg.precision)}}},
                {"runs", list},
                {"summary", {{"total", static_cast<long>(runs.size())}, {"pass", pass}, {"fail", fail}, {"error", error}}}};
}

json strip_timing(json doc)
{
    if (doc.contains("meta")) doc["meta"].erase("timestamp");
    if (doc.contains("runs"))
        for (json& r : doc["runs"]) r.erase("elapsed_ms");
    return doc;
}

std::string to_csv(const std::vector<IdentityReport>& runs)
{
    std::ostringstream os;
    os << std::setprecision(17);
    os << "case_id,sample,seed,status,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,tol,terms_used,terminated,"
          "elapsed_ms,message\n";
    for (const IdentityReport& r : runs) {
        std::string msg = r.message;
        std::replace(msg.begin(), msg.end(), '"', '\'');
        os << r.case_id << ',' << r.sample << ',' << r.seed << ',' << to_string(r.status) << ',' << r.lhs.real() << ','
           << r.lhs.imag() << ',' << r.rhs.real() << ',' << r.rhs.imag() << ',' << r.abs_residual << ','
           << r.rel_residual << ',' << r.tol << ',' << r.terms_used << ',' << (r.terminated ? "true" : "false") << ','
           << r.elapsed_ms << ",\"" << msg << "\"\n";
    }
    return os.str();
}

bool all_passed(const std::vector<IdentityReport>& runs)
{
    return std::all_of(runs.begin(), runs.end(), [](const IdentityReport& r) { return r.status == Status::Pass; });
}

} // namespace qident
