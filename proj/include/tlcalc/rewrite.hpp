// Copyright 2026 The tlcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tlcalc/diagram.hpp"
#include "tlcalc/evaluate.hpp"
#include "tlcalc/registry.hpp"

namespace tlcalc {

// Topological-like operations. Every rule preserves evaluate() exactly;
// the tests pin that property on randomized diagrams.

enum class RuleId {
  slide,
  fuse,
  loop_eliminate,
  close,
  partial_close,
  fold_norm,  // folds excess 1/sqrt(d) weight into the scalar (normalize only)
};

inline const char* rule_name(RuleId r) {
  switch (r) {
    case RuleId::slide: return "slide";
    case RuleId::fuse: return "fuse";
    case RuleId::loop_eliminate: return "loop_eliminate";
    case RuleId::close: return "close";
    case RuleId::partial_close: return "partial_close";
    case RuleId::fold_norm: return "fold_norm";
  }
  return "?";
}

struct RewriteTarget {
  bool loop = false;    // strand or loop reference
  std::size_t index = 0;
  int pos = -1;         // decoration position for slide
};

struct RewriteStep {
  RuleId rule;
  RewriteTarget target;
  std::uint64_t before_hash = 0;
  std::uint64_t after_hash = 0;
};

struct RewriteTrace {
  Diagram initial;
  Diagram final_form;
  std::vector<RewriteStep> steps;
};

// ---------------------------------------------------------------------------
// slide
// ---------------------------------------------------------------------------

/// Move the decoration at `pos` across the bend of a bent strand. In the
/// traversal-relative storage only the apex split moves; the physical flavor
/// toggle of the cup/cap sliding rule is implicit in the leg change.
inline Diagram slide(const Diagram& d, std::size_t strand_index, int pos) {
  if (strand_index >= d.strands.size())
    fail(ErrorCode::invalid_strand, "slide: no strand " + std::to_string(strand_index));
  Diagram out = d;
  Strand& s = out.strands[strand_index];
  if (!s.is_bent())
    fail(ErrorCode::invalid_argument,
         "slide: decoration sits on a straight through-strand with no bend");
  if (pos < 0 || pos >= static_cast<int>(s.word.size()))
    fail(ErrorCode::invalid_argument, "slide: no decoration at position " + std::to_string(pos));
  if (pos == s.apex - 1) {
    --s.apex;  // last start-leg decoration crosses onto the end leg
  } else if (pos == s.apex) {
    ++s.apex;  // first end-leg decoration crosses onto the start leg
  } else {
    fail(ErrorCode::invalid_argument,
         "slide: decoration is not adjacent to the bend (other marks in between)");
  }
  detail::sort_diagram(out);
  return out;
}

/// Slide on a loop. The stored cyclic word is rotation-canonical, so moving a
/// mark around the circle re-canonicalizes to the same value; the call checks
/// the reference and returns the (unchanged) diagram.
inline Diagram slide_loop(const Diagram& d, std::size_t loop_index, int pos) {
  if (loop_index >= d.loops.size())
    fail(ErrorCode::invalid_strand, "slide: no loop " + std::to_string(loop_index));
  const auto& word = d.loops[loop_index].word;
  if (pos < 0 || pos >= static_cast<int>(word.size()))
    fail(ErrorCode::invalid_argument, "slide: no decoration at position " + std::to_string(pos));
  return d;
}

// ---------------------------------------------------------------------------
// fuse
// ---------------------------------------------------------------------------

/// Collapse a strand's whole decoration word (left to right along traversal)
/// into one content-addressed derived label bound to the flavored product.
inline Diagram fuse(const Diagram& d, std::size_t strand_index, Registry& reg) {
  if (strand_index >= d.strands.size())
    fail(ErrorCode::invalid_strand, "fuse: no strand " + std::to_string(strand_index));
  const Strand& s = d.strands[strand_index];
  if (s.word.size() < 2)
    fail(ErrorCode::invalid_argument, "fuse: strand carries fewer than two decorations");
  const ComplexMatrix product = detail::chain_matrix(s.word, reg, reg.dimension());
  const std::string label = reg.add_derived(product);
  Diagram out = d;
  Strand& t = out.strands[strand_index];
  t.word = {Decoration{label, Flavor::plain}};
  t.apex = t.is_bent() ? 1 : -1;
  detail::sort_diagram(out);
  return out;
}

// ---------------------------------------------------------------------------
// loop elimination
// ---------------------------------------------------------------------------

/// Remove one loop, multiplying the scalar by tr(chain) * d^(-weight/2):
/// tr(W)/d for an ordinary cup/cap circle, tr(W) for a closure circle.
inline Diagram eliminate_loop(const Diagram& d, std::size_t loop_index,
                              const Registry& reg, int dim) {
  if (loop_index >= d.loops.size())
    fail(ErrorCode::invalid_strand, "loop_eliminate: no loop " + std::to_string(loop_index));
  Diagram out = d;
  const Loop& l = out.loops[loop_index];
  const ComplexMatrix w = detail::chain_matrix(l.word, reg, dim);
  out.scalar *= trace_of(w) * std::pow(static_cast<double>(dim), -0.5 * l.norm_weight);
  out.loops.erase(out.loops.begin() + static_cast<std::ptrdiff_t>(loop_index));
  return out;
}

inline Diagram loop_eliminate(const Diagram& d, const Registry& reg, int dim) {
  Diagram out = d;
  while (!out.loops.empty()) out = eliminate_loop(out, 0, reg, dim);
  return out;
}

// ---------------------------------------------------------------------------
// closure
// ---------------------------------------------------------------------------

/// Join TopBoundary(i) to BottomBoundary(i) for all i with plain wires
/// (weight 0, so closure circles count full traces). After normalize the
/// result is the scalar tr(evaluate(D)).
inline Diagram close(const Diagram& d) {
  if (d.upper_arity != d.lower_arity)
    fail(ErrorCode::arity_mismatch,
         "close: arities (" + std::to_string(d.upper_arity) + "," +
             std::to_string(d.lower_arity) + ") differ");
  for (const auto& s : d.strands)
    if (s.start.is_terminal() || s.end.is_terminal())
      fail(ErrorCode::terminal_present, "close: diagram has state terminals");

  const auto& segs = d.strands;
  std::vector<int> partner(2 * segs.size(), -1);
  std::vector<int> top_port(d.upper_arity, -1), bottom_port(d.lower_arity, -1);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    auto note = [&](const Endpoint& e, int port) {
      if (e.kind == EndpointKind::top_boundary) top_port[e.index] = port;
      else bottom_port[e.index] = port;
    };
    note(segs[i].start, static_cast<int>(2 * i));
    note(segs[i].end, static_cast<int>(2 * i + 1));
  }
  for (int k = 0; k < d.upper_arity; ++k) {
    partner[top_port[k]] = bottom_port[k];
    partner[bottom_port[k]] = top_port[k];
  }

  auto traced = detail::trace_chains(segs, partner);
  Diagram out;
  out.upper_arity = out.lower_arity = 0;
  out.scalar = d.scalar;
  out.loops = d.loops;
  out.loops.insert(out.loops.end(), traced.loops.begin(), traced.loops.end());
  detail::sort_diagram(out);
  return out;
}

// ---------------------------------------------------------------------------
// partial closure
// ---------------------------------------------------------------------------

/// Join the listed (top index, bottom index) pairs; remaining boundary points
/// are re-indexed order-preservingly. Evaluation equals the partial trace of
/// evaluate(D) over the closed tensor factors.
inline Diagram partial_close(const Diagram& d,
                             const std::vector<std::pair<int, int>>& pairs) {
  std::vector<char> top_closed(d.upper_arity, 0), bottom_closed(d.lower_arity, 0);
  for (const auto& [t, b] : pairs) {
    if (t < 0 || t >= d.upper_arity || b < 0 || b >= d.lower_arity)
      fail(ErrorCode::index_out_of_range,
           "partial_close: pair (" + std::to_string(t) + "," + std::to_string(b) +
               ") out of range");
    if (top_closed[t]++)
      fail(ErrorCode::duplicate_index,
           "partial_close: top index " + std::to_string(t) + " listed twice");
    if (bottom_closed[b]++)
      fail(ErrorCode::duplicate_index,
           "partial_close: bottom index " + std::to_string(b) + " listed twice");
  }

  const auto& segs = d.strands;
  std::vector<int> partner(2 * segs.size(), -1);
  std::vector<int> top_port(d.upper_arity, -1), bottom_port(d.lower_arity, -1);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    auto note = [&](const Endpoint& e, int port) {
      if (e.kind == EndpointKind::top_boundary) top_port[e.index] = port;
      else if (e.kind == EndpointKind::bottom_boundary) bottom_port[e.index] = port;
    };
    note(segs[i].start, static_cast<int>(2 * i));
    note(segs[i].end, static_cast<int>(2 * i + 1));
  }
  for (const auto& [t, b] : pairs) {
    partner[top_port[t]] = bottom_port[b];
    partner[bottom_port[b]] = top_port[t];
  }

  std::vector<int> top_map(d.upper_arity, -1), bottom_map(d.lower_arity, -1);
  int next = 0;
  for (int i = 0; i < d.upper_arity; ++i)
    if (!top_closed[i]) top_map[i] = next++;
  next = 0;
  for (int i = 0; i < d.lower_arity; ++i)
    if (!bottom_closed[i]) bottom_map[i] = next++;

  auto traced = detail::trace_chains(segs, partner);
  Diagram out;
  out.upper_arity = d.upper_arity - static_cast<int>(pairs.size());
  out.lower_arity = d.lower_arity - static_cast<int>(pairs.size());
  out.scalar = d.scalar;
  for (auto& s : traced.strands) {
    auto remap = [&](Endpoint& e) {
      if (e.kind == EndpointKind::top_boundary) e.index = top_map[e.index];
      else if (e.kind == EndpointKind::bottom_boundary) e.index = bottom_map[e.index];
    };
    remap(s.start);
    remap(s.end);
    detail::default_apex(s);
    out.strands.push_back(std::move(s));
  }
  out.loops = d.loops;
  out.loops.insert(out.loops.end(), traced.loops.begin(), traced.loops.end());
  detail::sort_diagram(out);
  return out;
}

// ---------------------------------------------------------------------------
// normalize
// ---------------------------------------------------------------------------

namespace detail {

inline int canonical_norm_weight(const Strand& s) { return s.is_bent() ? 1 : 0; }

}  // namespace detail

/// Fold a strand's excess 1/sqrt(d) weight (accumulated by composition) into
/// the scalar at the given dimension, leaving the canonical weight of its
/// shape (1 for bent strands, 0 for straight ones).
inline Diagram fold_norm(const Diagram& d, std::size_t strand_index, int dim) {
  if (strand_index >= d.strands.size())
    fail(ErrorCode::invalid_strand, "fold_norm: no strand " + std::to_string(strand_index));
  Diagram out = d;
  Strand& s = out.strands[strand_index];
  const int excess = s.norm_weight - detail::canonical_norm_weight(s);
  out.scalar *= std::pow(static_cast<double>(dim), -0.5 * excess);
  s.norm_weight = detail::canonical_norm_weight(s);
  detail::sort_diagram(out);
  return out;
}

struct NormalizeResult {
  Diagram diagram;
  RewriteTrace trace;
};

/// Deterministic canonical form: slide every decoration to its strand's
/// start leg, fuse each word to at most one mark, eliminate all loops into
/// the scalar, fold excess normalization, keep strands sorted. Idempotent;
/// evaluation preserved step by step.
inline NormalizeResult normalize(const Diagram& input, Registry& reg, int dim) {
  if (reg.dimension() != dim)
    fail(ErrorCode::dimension_mismatch, "normalize: registry dimension mismatch");
  Diagram cur = input;
  std::vector<RewriteStep> steps;
  auto record = [&](RuleId rule, RewriteTarget target, Diagram next) {
    steps.push_back({rule, target, structural_hash(cur), structural_hash(next)});
    cur = std::move(next);
  };

  // 1) slide decorations off the end legs
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < cur.strands.size(); ++i) {
      const Strand& s = cur.strands[i];
      if (s.apex >= 0 && s.apex < static_cast<int>(s.word.size())) {
        const int pos = s.apex;
        record(RuleId::slide, {false, i, pos}, slide(cur, i, pos));
        progress = true;
        break;
      }
    }
  }
  // 2) fuse words
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < cur.strands.size(); ++i) {
      if (cur.strands[i].word.size() >= 2) {
        record(RuleId::fuse, {false, i, -1}, fuse(cur, i, reg));
        progress = true;
        break;
      }
    }
  }
  // 3) eliminate loops
  while (!cur.loops.empty())
    record(RuleId::loop_eliminate, {true, 0, -1}, eliminate_loop(cur, 0, reg, dim));
  // 4) fold excess normalization weight
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < cur.strands.size(); ++i) {
      const Strand& s = cur.strands[i];
      if (s.norm_weight != detail::canonical_norm_weight(s)) {
        record(RuleId::fold_norm, {false, i, -1}, fold_norm(cur, i, dim));
        progress = true;
        break;
      }
    }
  }

  RewriteTrace trace{input, cur, std::move(steps)};
  return {cur, std::move(trace)};
}

// ---------------------------------------------------------------------------
// replay
// ---------------------------------------------------------------------------

inline Diagram apply_step(const Diagram& d, const RewriteStep& step, Registry& reg,
                          int dim) {
  switch (step.rule) {
    case RuleId::slide:
      return step.target.loop ? slide_loop(d, step.target.index, step.target.pos)
                              : slide(d, step.target.index, step.target.pos);
    case RuleId::fuse: return fuse(d, step.target.index, reg);
    case RuleId::loop_eliminate: return eliminate_loop(d, step.target.index, reg, dim);
    case RuleId::fold_norm: return fold_norm(d, step.target.index, dim);
    case RuleId::close: return close(d);
    case RuleId::partial_close:
      fail(ErrorCode::invalid_argument, "replay: partial_close steps carry no pair list");
  }
  fail(ErrorCode::invalid_argument, "replay: unknown rule");
}

/// Re-run a trace from its initial diagram, checking the recorded digests.
inline Diagram replay(const RewriteTrace& trace, Registry& reg, int dim) {
  Diagram cur = trace.initial;
  for (const auto& step : trace.steps) {
    if (structural_hash(cur) != step.before_hash)
      fail(ErrorCode::invalid_argument, "replay: trace diverged before a step");
    cur = apply_step(cur, step, reg, dim);
    if (structural_hash(cur) != step.after_hash)
      fail(ErrorCode::invalid_argument, "replay: trace diverged after a step");
  }
  return cur;
}

}  // namespace tlcalc
