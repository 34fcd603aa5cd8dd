#include "lfs/io.hpp"

#include <sstream>

namespace lfs {

using nlohmann::json;

json to_json(const GoodLocalFactor& f) {
    return json{{"p", f.prime}, {"type", "good"}, {"A_p", f.a_p}, {"A_p2", f.a_p2}};
}

json to_json(const BadLocalFactor& f) {
    return json{{"p", f.prime}, {"type", "bad"}, {"deg", f.degree()}, {"g", f.g}};
}

json to_json(const PrimeAssignment& f) {
    if (const auto* g = std::get_if<GoodLocalFactor>(&f)) return to_json(*g);
    if (const auto* b = std::get_if<BadLocalFactor>(&f)) return to_json(*b);
    const auto& c = std::get<CommittedAp>(f);
    return json{{"p", c.prime}, {"type", "ap"}, {"A_p", c.a_p}};
}

json to_json(const LinearRelation& r) {
    json weights = json::array();
    for (long long n = 1; n <= r.horizon(); ++n) weights.push_back(to_decimal(r.weights[n]));
    return json{{"provenance", r.provenance},
                {"constant", to_decimal(r.constant)},
                {"tail", to_decimal(r.tail)},
                {"weights", weights}};
}

json to_json(const SearchReport& r) {
    json survivors = json::array();
    for (const auto& s : r.survivors) {
        json factors = json::object();
        for (const auto& [p, f] : s.factors) factors[std::to_string(p)] = to_json(f);
        json arr = json::array();
        for (size_t n = 1; n < s.arith.size(); ++n) {
            if (s.arith_known[n]) arr.push_back(s.arith[n]);
            else arr.push_back(nullptr);
        }
        survivors.push_back(json{{"factors", factors}, {"A", arr}});
    }
    const char* status = r.status == SearchStatus::eliminated         ? "eliminated"
                         : r.status == SearchStatus::survivors_found ? "survivors_found"
                                                                      : "inconclusive";
    return json{{"level", r.level},
                {"sign", r.sign},
                {"counts", r.per_level_counts},
                {"status", status},
                {"survivors", survivors},
                {"levels", r.level_names},
                {"relations", r.relations_used},
                {"nodes", r.nodes_examined}};
}

json to_json(const OracleLFunction& L, const std::string& label1, const std::string& label2) {
    json factors = json::object();
    for (const auto& f : L.factor_data) factors[std::to_string(
        std::holds_alternative<GoodLocalFactor>(f) ? std::get<GoodLocalFactor>(f).prime
                                                   : std::get<BadLocalFactor>(f).prime)] =
        to_json(f);
    json arr = json::array();
    long long upto = std::min<long long>(L.horizon(), 100);
    for (long long n = 1; n <= upto; ++n) arr.push_back(L.arith[n]);
    return json{{"curve1", label1}, {"curve2", label2},   {"level", L.fe.level},
                {"sign", L.fe.sign}, {"A", arr},           {"factors", factors},
                {"horizon", L.horizon()}};
}

std::string weights_csv(const WeightVector& wv) {
    std::ostringstream os;
    os << "n,re_w,im_w,error_bound\n";
    for (long long n = 1; n <= wv.horizon(); ++n)
        os << n << "," << to_decimal(wv.weights[n].re) << "," << to_decimal(wv.weights[n].im)
           << "," << to_decimal(wv.errors[n]) << "\n";
    return os.str();
}

}  // namespace lfs
