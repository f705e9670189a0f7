#pragma once

// Iterative shuffle-correction construction of the Z and Z' families, plus the
// level-wide verification driver.

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "hoform/formal.hpp"

namespace hoform {

enum class Family { Z, Zprime };
enum class ResidualClass { zero, in_A, outside_A };

std::string_view to_string(Family family);
std::string_view to_string(ResidualClass rc);

/// Deliberate corruption of constructions, for exercising the verifiers.
enum class Fault { none, drop_correction, flip_correction_sign };

std::optional<Fault> parse_fault(const std::string& name);

struct ConstructorOptions {
  ExceptionalReading reading = ExceptionalReading::tail_slot;
  /// Subtract Z-constructions for leftover I-entries in the equation.
  bool residual_sweep = true;
  Fault fault = Fault::none;
};

struct ConstructionRecord {
  IndexEntry entry;
  Family family = Family::Z;
  Form form;
  SymbolTensor target;
  SymbolTensor residual;  // fe - target
  ResidualClass residual_class = ResidualClass::zero;
  int stage = 0;          // last positive position, 0 for leaves
  std::size_t shuffles = 0;
  /// One entry per non-identity shuffle whose interleaved word was used.
  std::vector<IndexEntry> corrections_used;
  /// Extra I-entries removed after the shuffle corrections.
  std::vector<IndexEntry> residual_corrections;
};

class Constructor {
 public:
  explicit Constructor(GroupProfile profile, ConstructorOptions options = {});

  const GroupProfile& profile() const { return profile_; }
  const ConstructorOptions& options() const { return options_; }

  /// Throws not-in-index unless the entry lies in I.
  std::shared_ptr<const ConstructionRecord> construct_Z(const IndexEntry& entry);
  /// Throws not-in-index unless the entry lies in J.
  std::shared_ptr<const ConstructionRecord> construct_Zprime(const IndexEntry& entry);

 private:
  using Key = std::pair<Word, BaseForm>;

  std::shared_ptr<const ConstructionRecord> get(Family family, const IndexEntry& entry);
  ConstructionRecord build(Family family, const IndexEntry& entry);

  GroupProfile profile_;
  ConstructorOptions options_;
  std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const ConstructionRecord>> memo_[2];
};

struct EntryCheck {
  IndexEntry entry;
  Family family;
  ResidualClass residual_class;
  bool passed;
  std::string detail;
};

struct LevelReport {
  int t = 0, k = 0;
  std::vector<EntryCheck> checks;  // Z over I first, then Z' over J, each in enumeration order
  std::size_t I_size = 0, J_size = 0;
  std::size_t rank = 0;
  bool rank_ok = false;
  bool passed() const;
};

/// Constructs every Z over I and every Z' over J and checks equations and rank.
LevelReport verify_level(Constructor& c, int t, int k, int jobs = 0);
/// Single-threaded reference of verify_level.
LevelReport verify_level_serial(Constructor& c, int t, int k);

struct LemmaCheck {
  IndexEntry entry;
  SymbolTensor expected, actual;
  bool passed;
};

/// Parabolic chains of Z' over entries of J with a negative first letter.
std::vector<LemmaCheck> check_parabolic_lemma(Constructor& c, int t, int k);

struct DimensionCount {
  std::size_t implemented = 0;
  std::size_t enumerated = 0;  // spanning labels counted one by one
  /// (sum_{j=0}^{t} (2g)^j) dim M_k, one word length past the spanning labels.
  std::size_t closed_form = 0;
};

DimensionCount dimension_ZM(int t, int k, const GroupProfile& profile);

}  // namespace hoform
