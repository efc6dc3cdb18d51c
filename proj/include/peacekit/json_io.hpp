#pragma once

#include <string>

#include <json.hpp>

#include "peacekit/adversary.hpp"
#include "peacekit/colouring.hpp"
#include "peacekit/dense.hpp"
#include "peacekit/graph.hpp"
#include "peacekit/nibble.hpp"
#include "peacekit/zcolour.hpp"

namespace peacekit {

using nlohmann::json;

// Canonical dump used by every writer so that save -> load -> save is
// byte-identical.
std::string dump_json(const json& j);
void write_json_file(const json& j, const std::string& path);
json read_json_file(const std::string& path);

json colouring_to_json(const PartialColouring& f);
PartialColouring colouring_from_json(const json& j);
void save_colouring(const PartialColouring& f, const std::string& path);
PartialColouring load_colouring(const std::string& path);

json peace_report_to_json(const PeaceReport& rep);
json bipartition_to_json(const Bipartition& bip);
Bipartition bipartition_from_json(const json& j);
json decomposition_to_json(const DenseDecomposition& dd);
DenseDecomposition decomposition_from_json(const json& j);

json trace_to_json(const IdealizedTrace& t);
json star_stats_to_json(const StarStats& s);
json nibble_stats_to_json(const NibbleStats& s);
json uniqueness_audit_to_json(const UniquenessAudit& a);
json subset_audit_to_json(const SubsetAudit& a);
json zreport_to_json(const ZBadEventReport& rep);

}  // namespace peacekit
