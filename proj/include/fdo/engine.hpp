#pragma once

// Association engines: decide which operations apply to which data FDOs under
// the record, profile or attribute typing model.
//
// Every query can report its cost to a StepCounter. One step is one elementary
// read: one attribute of a record or one element of a profile's operation
// list. The scan strategy follows the read procedures the cost bounds are
// derived from; the indexed strategy answers from relation maps built once at
// construction.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "fdo/core.hpp"
#include "fdo/registry.hpp"

namespace fdo {

using Association = std::pair<Pid, Pid>;  // (data FDO, operation)
using Relation = std::set<Association>;

enum class Strategy { scan, indexed };

// How required inputs with a value constraint are matched under attribute
// typing. key_only ignores constraints, which is the graph model's reading.
enum class MatchMode { key_value, key_only };

struct EngineOptions {
  Strategy strategy = Strategy::indexed;
  MatchMode match = MatchMode::key_value;
};

class StepCounter {
 public:
  void add(std::uint64_t n = 1) noexcept { value_ += n; }
  std::uint64_t value() const noexcept { return value_; }
  void reset() noexcept { value_ = 0; }

 private:
  std::uint64_t value_ = 0;
};

// Precomputed association structure of one ecosystem snapshot.
struct QueryIndex {
  std::map<Pid, std::vector<Pid>> ops_by_fdo;             // O_f, sorted
  std::map<Pid, std::vector<Pid>> fdos_by_op;             // F_o, sorted
  std::map<Pid, std::vector<Attribute>> attrs_by_fdo;     // A_f
  std::map<Pid, std::vector<Attribute>> attrs_by_op;      // A_o
  std::map<Pid, Pid> profile_by_fdo;                      // profile model only
  std::map<Pid, std::vector<Pid>> ops_by_profile;         // profile model only

  // Sum of |O_f| over all FDOs.
  std::size_t association_count() const;
  // Sum of |O_f| equals sum of |F_o|.
  bool handshake_holds() const;
};

// Result of associating a new operation or FDO. `writes` lists the registry
// writes in order: the registration of the new component first, then updates
// of pre-existing records.
struct UpdateReport {
  std::shared_ptr<const Ecosystem> ecosystem;
  std::vector<PendingWrite> writes;
  std::size_t record_writes = 0;
  std::set<Pid> associated;        // F' for a new operation, O' for a new FDO
  std::set<Pid> touched_profiles;  // profiles whose operation list grew
};

class AssociationEngine {
 public:
  explicit AssociationEngine(Ecosystem ecosystem, EngineOptions options = {});
  explicit AssociationEngine(std::shared_ptr<const Ecosystem> ecosystem, EngineOptions options = {});

  Model model() const noexcept { return model_; }
  const Ecosystem& ecosystem() const noexcept { return *eco_; }
  std::shared_ptr<const Ecosystem> snapshot() const noexcept { return eco_; }
  const EngineOptions& options() const noexcept { return options_; }
  // Null under the scan strategy.
  const QueryIndex* index() const noexcept { return index_.get(); }

  // Throw Error(unknown_pid) for Pids outside the ecosystem and
  // Error(kind_mismatch) when f is not a data FDO or o not an operation.
  bool is_associated(const Pid& fdo, const Pid& op, StepCounter* steps = nullptr) const;
  std::set<Pid> ops_for_fdo(const Pid& fdo, StepCounter* steps = nullptr) const;
  std::set<Pid> fdos_for_op(const Pid& op, StepCounter* steps = nullptr) const;

  Relation relation() const;

  // Record model: every target gets one operation-reference attribute.
  // Profile model: the targets must be a union of profile populations; each
  // such profile gets the operation appended (Error(unexpressible_target_set)
  // otherwise). Attribute model: targets are ignored, the operation's required
  // inputs define them.
  UpdateReport associate_new_operation(OperationSpec op, const std::set<Pid>& targets) const;

  // Record model: the FDO is registered and then receives one reference per
  // operation. Profile and attribute models: `ops` must equal the implied set
  // (Error(model_mismatch) listing it otherwise) and nothing else is written.
  UpdateReport associate_new_fdo(InformationRecord fdo, const std::set<Pid>& ops) const;

  // Operations the model would associate with a not-yet-registered record.
  // Record model: its operation references.
  std::set<Pid> implied_ops(const InformationRecord& fdo) const;

 private:
  void check_fdo(const Pid& fdo) const;
  void check_op(const Pid& op) const;
  std::set<Pid> scan_ops_for_record(const InformationRecord& record, StepCounter* steps) const;

  std::shared_ptr<const Ecosystem> eco_;
  Model model_;
  EngineOptions options_;
  std::shared_ptr<const QueryIndex> index_;
};

}  // namespace fdo
