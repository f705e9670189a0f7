#include "hoform/constructor.hpp"

#include <algorithm>
#include <mutex>

#include <omp.h>

#include "hoform/error.hpp"

namespace hoform {

std::string_view to_string(Family family) { return family == Family::Z ? "Z" : "Z'"; }

std::string_view to_string(ResidualClass rc) {
  switch (rc) {
    case ResidualClass::zero: return "zero";
    case ResidualClass::in_A: return "in-A";
    case ResidualClass::outside_A: return "outside-A";
  }
  return "?";
}

std::optional<Fault> parse_fault(const std::string& name) {
  if (name == "none") return Fault::none;
  if (name == "drop-correction") return Fault::drop_correction;
  if (name == "flip-sign") return Fault::flip_correction_sign;
  return std::nullopt;
}

Constructor::Constructor(GroupProfile profile, ConstructorOptions options)
    : profile_(std::move(profile)), options_(options) {}

std::shared_ptr<const ConstructionRecord> Constructor::construct_Z(const IndexEntry& entry) {
  if (!in_I(entry, profile_)) throw Error(ErrorKind::not_in_index, entry.label() + " is not in I");
  return get(Family::Z, entry);
}

std::shared_ptr<const ConstructionRecord> Constructor::construct_Zprime(const IndexEntry& entry) {
  if (!in_J(entry, profile_)) throw Error(ErrorKind::not_in_index, entry.label() + " is not in J");
  return get(Family::Zprime, entry);
}

namespace {

thread_local std::vector<std::pair<Family, IndexEntry>> in_progress;

struct ProgressGuard {
  ProgressGuard(Family f, const IndexEntry& e) {
    for (const auto& [pf, pe] : in_progress) {
      if (pf == f && pe.word == e.word && pe.base == e.base) {
        throw Error(ErrorKind::internal_consistency, "construction of " + e.label() + " depends on itself");
      }
    }
    in_progress.emplace_back(f, e);
  }
  ~ProgressGuard() { in_progress.pop_back(); }
};

ResidualClass classify(const SymbolTensor& residual, int t, int k, const GroupProfile& profile) {
  if (residual.is_zero()) return ResidualClass::zero;
  if (!residual.all_degree_one()) return ResidualClass::outside_A;
  return tensor_in_A(residual, t, k, profile) ? ResidualClass::in_A : ResidualClass::outside_A;
}

}  // namespace

std::shared_ptr<const ConstructionRecord> Constructor::get(Family family, const IndexEntry& entry) {
  const int slot = family == Family::Z ? 0 : 1;
  Key key{entry.word, entry.base};
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_[slot].find(key); it != memo_[slot].end()) return it->second;
  }
  auto record = std::make_shared<const ConstructionRecord>(build(family, entry));
  std::unique_lock lock(mutex_);
  return memo_[slot].try_emplace(std::move(key), std::move(record)).first->second;
}

ConstructionRecord Constructor::build(Family family, const IndexEntry& entry) {
  ProgressGuard guard(family, entry);
  const int g = profile_.genus();
  const int t = entry.order();
  const int k = entry.weight();
  const Word& w = entry.word;

  ConstructionRecord rec;
  rec.entry = entry;
  rec.family = family;
  rec.target = pure_tensor(w, entry.base, g);
  rec.residual = SymbolTensor(t - 1);
  rec.residual_class = ResidualClass::zero;

  int r = 0;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (w[i] > 0) r = i + 1;
  }
  rec.stage = r;

  if (t == 1) {
    rec.form = leaf_basis(entry.base);
  } else if (r == 0) {
    if (family == Family::Z && entry.base.is_cuspidal()) {
      rec.form = leaf_z(w, entry.base, g, options_.reading);
    } else {
      rec.form = leaf_zprime(w, entry.base, g);
    }
  } else {
    const Word prefix(w.begin(), w.begin() + (r - 1));
    const Word tail(w.begin() + r, w.end());
    const Word head(w.begin(), w.begin() + r);
    auto inner = get(Family::Zprime, {prefix, BaseForm::cusp(2, w[r - 1])});
    auto outer = get(family, {tail, entry.base});
    std::vector<Form> forms{product(primitive(inner->form), outer->form)};
    std::vector<Scalar> scalars{1};

    const auto shuffles = enumerate_shuffles(r, t);
    rec.shuffles = shuffles.size();
    for (const auto& s : shuffles) {
      if (is_identity_shuffle(s)) continue;
      Word j(t - 1);
      for (int a = 0; a < r; ++a) j[s.phi[a] - 1] = head[a];
      for (std::size_t b = 0; b < tail.size(); ++b) j[s.psi[b] - 1] = tail[b];
      IndexEntry je{j, entry.base};
      if (family == Family::Z && !in_I(je, profile_)) continue;
      rec.corrections_used.push_back(je);
    }
    if (options_.fault == Fault::drop_correction && !rec.corrections_used.empty()) rec.corrections_used.pop_back();
    const Scalar sign = options_.fault == Fault::flip_correction_sign ? 1 : -1;
    for (const auto& je : rec.corrections_used) {
      forms.push_back(get(family, je)->form);
      scalars.push_back(sign);
    }

    if (family == Family::Z && options_.residual_sweep) {
      // Leftover I-terms in the equation are removed with their own Z-constructions.
      SymbolTensor fe(t - 1);
      for (std::size_t i = 0; i < forms.size(); ++i) fe += scalars[i] * forms[i]->fe();
      fe -= rec.target;
      for (const auto& [key, c] : fe.terms()) {
        if (key.kappa != 0 || std::any_of(key.slots.begin(), key.slots.end(), [](const auto& m) { return m.size() != 1; })) {
          continue;
        }
        IndexEntry e{key_word(key), key.base};
        if (!in_I(e, profile_) || (e.word == w && e.base == entry.base)) continue;
        rec.residual_corrections.push_back(e);
        forms.push_back(get(Family::Z, e)->form);
        scalars.push_back(-c);
      }
    }
    rec.form = forms.size() == 1 ? forms.front() : lincomb(std::move(scalars), std::move(forms));
  }

  rec.residual = rec.form->fe() - rec.target;
  rec.residual_class = classify(rec.residual, t, k, profile_);
  return rec;
}

bool LevelReport::passed() const {
  return rank_ok && std::all_of(checks.begin(), checks.end(), [](const EntryCheck& c) { return c.passed; });
}

namespace {

EntryCheck check_one(Constructor& c, Family family, const IndexEntry& e) {
  EntryCheck out{e, family, ResidualClass::outside_A, false, ""};
  try {
    auto rec = family == Family::Z ? c.construct_Z(e) : c.construct_Zprime(e);
    out.residual_class = rec->residual_class;
    out.passed = family == Family::Z ? rec->residual_class != ResidualClass::outside_A
                                     : rec->residual_class == ResidualClass::zero;
    if (!out.passed) out.detail = "residual " + rec->residual.to_string();
  } catch (const Error& err) {
    out.detail = std::string(to_string(err.kind())) + ": " + err.what();
  }
  return out;
}

LevelReport finish(Constructor& c, int t, int k, std::vector<EntryCheck> checks, std::size_t I_size,
                   std::size_t J_size) {
  LevelReport rep;
  rep.t = t;
  rep.k = k;
  rep.I_size = I_size;
  rep.J_size = J_size;
  std::vector<SymbolTensor> fes;
  for (std::size_t i = 0; i < I_size; ++i) {
    if (!checks[i].passed) continue;
    fes.push_back(c.construct_Z(checks[i].entry)->form->fe());
  }
  rep.rank = tensor_rank(fes);
  rep.rank_ok = rep.rank == I_size;
  rep.checks = std::move(checks);
  return rep;
}

}  // namespace

LevelReport verify_level_serial(Constructor& c, int t, int k) {
  const auto I = enumerate_I(t, k, c.profile());
  const auto J = enumerate_J(t, k, c.profile());
  std::vector<EntryCheck> checks;
  for (const auto& e : I) checks.push_back(check_one(c, Family::Z, e));
  for (const auto& e : J) checks.push_back(check_one(c, Family::Zprime, e));
  return finish(c, t, k, std::move(checks), I.size(), J.size());
}

LevelReport verify_level(Constructor& c, int t, int k, int jobs) {
  const auto I = enumerate_I(t, k, c.profile());
  const auto J = enumerate_J(t, k, c.profile());
  const long n = static_cast<long>(I.size() + J.size());
  std::vector<EntryCheck> checks(n);
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
  for (long i = 0; i < n; ++i) {
    const bool z = i < static_cast<long>(I.size());
    checks[i] = check_one(c, z ? Family::Z : Family::Zprime, z ? I[i] : J[i - I.size()]);
  }
  return finish(c, t, k, std::move(checks), I.size(), J.size());
}

std::vector<LemmaCheck> check_parabolic_lemma(Constructor& c, int t, int k) {
  if (t < 3) throw Error(ErrorKind::invalid_arguments, "parabolic lemma needs t >= 3");
  std::vector<LemmaCheck> out;
  for (const auto& e : enumerate_J(t, k, c.profile())) {
    if (e.word.front() > 0) continue;
    LemmaCheck lc{e, SymbolTensor(t - 3), SymbolTensor(t - 3), false};
    if (e.word[0] == -1 && e.word[1] == 1) {
      TermKey key{{}, e.base, 1};
      for (std::size_t i = 2; i < e.word.size(); ++i) key.slots.push_back({e.word[i]});
      lc.expected.add(std::move(key), 1);
    }
    lc.actual = parabolic_chain(c.construct_Zprime(e)->form);
    lc.passed = lc.actual == lc.expected;
    out.push_back(std::move(lc));
  }
  return out;
}

DimensionCount dimension_ZM(int t, int k, const GroupProfile& profile) {
  if (t < 1) throw Error(ErrorKind::invalid_arguments, "order t must be >= 1");
  const std::size_t dim = profile.dim_modular_forms(k);
  const std::size_t base = 2 * profile.genus();
  DimensionCount out;
  std::size_t power = 1;
  for (int j = 0; j <= t; ++j) {
    if (j < t) out.implemented += power * dim;
    out.closed_form += power * dim;
    power *= base;
  }
  for (int r = 1; r <= t; ++r) out.enumerated += enumerate_J(r, k, profile).size();
  return out;
}

}  // namespace hoform
