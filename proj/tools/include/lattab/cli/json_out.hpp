#pragma once

#include <string>

#include <json.hpp>

#include "lattab/automorphs.hpp"
#include "lattab/calculus.hpp"
#include "lattab/lattice.hpp"
#include "lattab/special.hpp"
#include "lattab/stability.hpp"
#include "lattab/sums.hpp"

namespace lattab::cli {

using Json = nlohmann::ordered_json;

// Serializes with every floating-point number at 17 significant digits
// (non-finite values become null).
std::string dump17(const Json& j, int indent = 2);

Json to_json(const LatticeParams& L);
Json to_json(const SumResult& r);
Json to_json(const SumConfig& c);
Json to_json(const Gradient5& g);
Json to_json(const Hessian5& h);
Json to_json(const StabilityReport& r);
Json to_json(const ThresholdResult& t);
Json to_json(const FccThresholds& t);
Json to_json(const SignQuantities& q);
Json to_json(const ThetaScan& s);
Json to_json(const AutomorphCheck& c);

LatticeParams lattice_from_json(const Json& j);

}  // namespace lattab::cli
