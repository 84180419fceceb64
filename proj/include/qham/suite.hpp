#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qham/cobordism.hpp"
#include "qham/implosion.hpp"
#include "qham/multivector.hpp"
#include "qham/qp_structures.hpp"
#include "qham/quiver.hpp"

namespace qham {

struct RunConfig {
  std::string group = "su2";
  std::uint64_t seed = 42;
  int n_samples = 20;
  double fd_step = 1e-3;
  std::vector<double> t_grid = {1e-1, 1e-2, 1e-3, 1e-4};
  std::map<std::string, double> tol;

  static RunConfig defaults();
  double tolerance(const std::string& name) const;
  void validate_config() const;
};

nlohmann::json multivector_to_json(const Multivector& mv);
nlohmann::json quiver_to_json_obj(const Quiver& q);
nlohmann::json config_to_json(const RunConfig& cfg);

nlohmann::json verify_lie_section(const RunConfig& cfg);
nlohmann::json verify_multivector_section(const RunConfig& cfg);
nlohmann::json verify_qp_section(const RunConfig& cfg);
nlohmann::json deform_bivector_section(const RunConfig& cfg);
nlohmann::json deform_trivector_section(const RunConfig& cfg);
nlohmann::json deform_mult_section(const RunConfig& cfg);
nlohmann::json implode_faces_section(const RunConfig& cfg);
nlohmann::json implode_strata_section(const RunConfig& cfg);
nlohmann::json implode_family_section(const RunConfig& cfg);
nlohmann::json implode_master_section(const RunConfig& cfg, int genus, int r);
nlohmann::json quiver_info_section(const Quiver& q, const RunConfig& cfg);
nlohmann::json quiver_sample_section(const Quiver& q, const RunConfig& cfg);
nlohmann::json quiver_freeness_section(const Quiver& q, const RunConfig& cfg);
nlohmann::json quiver_rank_section(const Quiver& q, const RunConfig& cfg);
nlohmann::json cob_parse_section(const std::string& expr, const RunConfig& cfg);
nlohmann::json cob_relations_section(const RunConfig& cfg);
nlohmann::json cob_functoriality_section(const RunConfig& cfg);

// The whole battery for one group; deterministic given (config, seed).
nlohmann::json run_suite(const RunConfig& cfg);

bool section_pass(const nlohmann::json& section);

}  // namespace qham
