#ifndef NILCERT_IO_HPP
#define NILCERT_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "nilcert/pipelines.hpp"

namespace nilcert {

/// Parsed instance document. Blocks are optional; views construct the
/// typed objects on demand. The group is kept as a raw table so that a
/// tampered document still parses and fails validation with a witness.
struct InstanceData {
  FieldSpec field{2};
  Algebra algebra{};
  std::optional<std::vector<std::vector<std::uint32_t>>> group_table;
  std::optional<std::vector<std::string>> group_names;
  std::optional<std::vector<std::uint32_t>> grades;        // per basis vector
  std::optional<std::vector<Matrix>> action_matrices;       // per group element
  std::optional<std::vector<Vec>> ideal_vectors;
  std::optional<std::vector<std::vector<std::uint32_t>>> series_subgroups;

  bool has_group() const { return group_table.has_value(); }
  bool has_grading() const { return has_group() && grades; }
  bool has_action() const { return has_group() && action_matrices; }

  void set_group(const FiniteGroup& g) {
    group_table = g.table();
    group_names = g.names();
  }

  FiniteGroup group() const;  // validated view; throws on axiom violation
  Grading grading() const;
  GroupAction action() const;
  Subspace ideal_subspace() const;
  PrimeSeries series() const;

  bool operator==(const InstanceData&) const = default;
};

/// Strict JSON parse: unknown keys are rejected, all indices 0-based,
/// scalars canonical residues. Throws nilcert::error with a JSON path.
InstanceData parse_instance(const std::string& text);

/// Canonical emission; parse(emit(x)) == x structurally.
std::string emit_instance(const InstanceData& data);

/// Runs every validator applicable to the present blocks.
ValidationReport validate_instance(const InstanceData& data);

/// FNV-1a 64-bit digest of the raw input bytes, hex encoded.
std::string digest64(const std::string& bytes);

nlohmann::json bounds_json(const BoundSet& b);
nlohmann::json checks_json(const std::vector<CheckResult>& checks);
nlohmann::json subspace_json(const Subspace& s);
nlohmann::json report_json(const ConstructionReport& rep, const std::string& input_digest);
nlohmann::json theorem1_json(const Theorem1Report& rep, const std::string& input_digest);
nlohmann::json lift_json(const LiftReport& rep, const std::string& input_digest);
nlohmann::json bergman_json(const BergmanReport& rep, const std::string& input_digest);
nlohmann::json validation_json(const ValidationReport& rep, const std::string& input_digest);
nlohmann::json tower_dump_json(const CentralizerTower& tower);

/// Writes text to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace nilcert

#endif
