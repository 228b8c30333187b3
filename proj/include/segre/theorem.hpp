#pragma once

// Exhaustive check that the Segre map sends every cluster variable reached
// from the glued seed to the elementary tensor built from the matching
// factor cluster variable.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "segre/glue.hpp"
#include "segre/seed.hpp"
#include "segre/tensor.hpp"

namespace segre {

struct Witness {
  std::vector<std::string> sequence;
  std::string slot;
  std::string expected;
  std::string actual;
};

struct TheoremOptions {
  std::size_t depth = 4;
  MapOptions map;
  std::size_t max_witnesses = 1;
};

struct TheoremReport {
  bool success = true;
  std::size_t depth = 0;
  MapKind map = MapKind::phi;
  Exponent glued_degree = 0;
  std::size_t sequences = 0;  // mutation sequences visited, including the empty one
  std::size_t checks = 0;     // (sequence, slot) pairs compared
  std::vector<Witness> witnesses;
};

namespace detail {

class TheoremWalker {
 public:
  TheoremWalker(const GluedSeed& g, const TheoremOptions& opts, TheoremReport& report)
      : g_(g), map_(g, opts.map), opts_(opts), report_(report) {}

  void walk(const Seed& glued, const Seed& left, const Seed& right,
            std::vector<VariableId>& seq) {
    if (report_.witnesses.size() >= opts_.max_witnesses) return;
    ++report_.sequences;
    check(glued, left, right, seq);
    if (seq.size() == opts_.depth) return;
    for (auto k : glued.mutable_ids()) {
      if (!seq.empty() && seq.back() == k) continue;
      const auto& p = g_.provenance[k.index];
      Seed next = mutate_seed(glued, k);
      seq.push_back(k);
      if (p.side == Side::left)
        walk(next, mutate_seed(left, p.origin), right, seq);
      else
        walk(next, left, mutate_seed(right, p.origin), seq);
      seq.pop_back();
      if (report_.witnesses.size() >= opts_.max_witnesses) return;
    }
  }

 private:
  void check(const Seed& glued, const Seed& left, const Seed& right,
             const std::vector<VariableId>& seq) {
    for (std::uint32_t i = 0; i < glued.size(); ++i) {
      VariableId v{i};
      const auto& p = g_.provenance[i];
      const Exponent d = glued.degree(v);
      SegreTensor actual = map_.apply_checked(glued.value(v), d);
      SegreTensor expected = map_.proxy_tensor();
      if (p.side == Side::left) {
        if (left.degree(p.origin) != d)
          throw InternalInconsistency("left factor degree disagrees at " + glued.name(v));
        expected = map_.left_tensor(left.value(p.origin), d);
      } else if (p.side == Side::right) {
        if (right.degree(p.origin) != d)
          throw InternalInconsistency("right factor degree disagrees at " + glued.name(v));
        expected = map_.right_tensor(right.value(p.origin), d);
      }
      ++report_.checks;
      bool ok = actual == expected;
      if (ok && map_.options().kind == MapKind::phi && !map_.options().force)
        ok = segre_membership(actual);
      if (!ok) {
        report_.success = false;
        Witness w;
        for (auto k : seq) w.sequence.push_back(glued.name(k));
        w.slot = glued.name(v);
        w.expected = expected.to_string();
        w.actual = actual.to_string();
        report_.witnesses.push_back(std::move(w));
        if (report_.witnesses.size() >= opts_.max_witnesses) return;
      }
    }
  }

  const GluedSeed& g_;
  SegreMap map_;
  const TheoremOptions& opts_;
  TheoremReport& report_;
};

}  // namespace detail

/// Walks every mutation sequence of length <= depth from the glued seed
/// (never repeating a vertex twice in a row), mutating the factor seeds along
/// the projected sequence, and compares the map's image of each cluster
/// variable with the expected elementary tensor.
inline TheoremReport verify_theorem(const GluedSeed& g, const Seed& s1, const Seed& s2,
                                    const TheoremOptions& opts = {}) {
  TheoremReport report;
  report.depth = opts.depth;
  report.map = opts.map.kind;
  report.glued_degree = g.glued_degree();
  detail::TheoremWalker walker(g, opts, report);
  std::vector<VariableId> seq;
  walker.walk(g.seed, s1, s2, seq);
  return report;
}

inline TheoremReport verify_theorem(const Seed& s1, VariableId x, const Seed& s2,
                                    VariableId y, const TheoremOptions& opts = {}) {
  return verify_theorem(glue(s1, x, s2, y), s1, s2, opts);
}

}  // namespace segre
