#pragma once

// JSON (de)serialization: partition-keyed rational tables, distribution and
// moment specs, matrix family specs, moment arrays and invariance
// certificates.  Rationals travel as "p/q" strings in lowest terms.

#include "ncfree/linalg.hpp"
#include "ncfree/partition.hpp"

#include <json.hpp>

namespace ncfree {

// matrix table keyed by canonical partition strings (outer = row)
nlohmann::json rat_mat_to_json(const RatMat& m, const std::vector<SetPartition>& order);
RatMat json_to_rat_mat(const nlohmann::json& j, const std::vector<SetPartition>& order);

nlohmann::json int_mat_to_json(const IntMat& m, const std::vector<SetPartition>& order);

class DistributionSpec;
class MomentSpec;
struct MatrixFamilySpec;
struct MomentArray;
struct InvarianceCertificate;

nlohmann::json distribution_to_json(const DistributionSpec& spec);
DistributionSpec distribution_from_json(const nlohmann::json& j);
nlohmann::json moments_to_json(const MomentSpec& spec);
MomentSpec moments_from_json(const nlohmann::json& j);

nlohmann::json family_to_json(const MatrixFamilySpec& fam);
MatrixFamilySpec family_from_json(const nlohmann::json& j);

nlohmann::json moment_array_to_json(const MomentArray& m);
MomentArray moment_array_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const InvarianceCertificate& c);

}  // namespace ncfree
