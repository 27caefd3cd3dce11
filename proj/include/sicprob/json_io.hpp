#pragma once

// JSON encodings shared by the CLI and data files.
//
//   vector / matrix   {"dim": n, "entries": [[re, im], ...]}   (row-major)
//   group             {"kind": "single", "d": 3}
//                     {"kind": "tensor_power", "base_d": 2, "k": 3}
//   fiducial          {"label": ..., "dim": n, "group": {...}, "vector": {...}}
//   prob vector       {"outcomes": n, "values": [...]}
//   conditional       {"ground": nD, "sky": d2, "rows": [[...], ...]}

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "sicprob/linalg.hpp"
#include "sicprob/probrep.hpp"
#include "sicprob/sic.hpp"
#include "sicprob/weyl_heisenberg.hpp"

namespace sicprob::json {

using nlohmann::json;

json encode(const ComplexVector& v);
json encode(const ComplexMatrix& m);
json encode(const GroupSpec& g);
json encode(const Fiducial& f);
json encode(const ProbVector& p);
json encode(const ConditionalMatrix& c);
json encode(const VerificationReport& r);

ComplexVector decode_vector(const json& j);
ComplexMatrix decode_matrix(const json& j);
GroupSpec decode_group(const json& j);
Fiducial decode_fiducial(const json& j);
ProbVector decode_prob_vector(const json& j);
ConditionalMatrix decode_conditional(const json& j);

/// Accepts a single fiducial record or an array of them.
std::vector<Fiducial> decode_fiducials(const json& j);

json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const json& j, int indent = 2);

}  // namespace sicprob::json
