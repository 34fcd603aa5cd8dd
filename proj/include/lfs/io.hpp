// JSON and CSV serialization of the public artifacts: local factors, search
// reports, relations, oracle data, weight tables.  High-precision values are
// written as decimal strings; output is deterministic for a fixed precision.

#pragma once

#include "lfs/afe.hpp"
#include "lfs/oracle.hpp"
#include "lfs/relations.hpp"
#include "lfs/search.hpp"

#include <json.hpp>

#include <string>

namespace lfs {

nlohmann::json to_json(const GoodLocalFactor& f);
nlohmann::json to_json(const BadLocalFactor& f);
nlohmann::json to_json(const PrimeAssignment& f);
nlohmann::json to_json(const LinearRelation& r);
nlohmann::json to_json(const SearchReport& r);
nlohmann::json to_json(const OracleLFunction& L, const std::string& label1,
                       const std::string& label2);

std::string weights_csv(const WeightVector& wv);

}  // namespace lfs
