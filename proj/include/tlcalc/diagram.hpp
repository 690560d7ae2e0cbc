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

#include <algorithm>
#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tlcalc/errors.hpp"

namespace tlcalc {

// ---------------------------------------------------------------------------
// Decorations
// ---------------------------------------------------------------------------

/// Which of M, M^T, M^*, M^dag a marked point denotes. The encoding makes the
/// three togglings bit operations: bit 0 = transposed, bit 1 = conjugated.
enum class Flavor : std::uint8_t {
  plain = 0,
  transpose = 1,
  conjugate = 2,
  adjoint = 3,
};

constexpr Flavor transpose_toggled(Flavor f) {
  return static_cast<Flavor>(static_cast<std::uint8_t>(f) ^ 1u);
}
constexpr Flavor conjugate_toggled(Flavor f) {
  return static_cast<Flavor>(static_cast<std::uint8_t>(f) ^ 2u);
}
constexpr Flavor adjoint_toggled(Flavor f) {
  return static_cast<Flavor>(static_cast<std::uint8_t>(f) ^ 3u);
}

inline const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::plain: return "plain";
    case Flavor::transpose: return "transpose";
    case Flavor::conjugate: return "conjugate";
    case Flavor::adjoint: return "adjoint";
  }
  return "?";
}

/// An operator mark on a strand. Position along the strand is the index in
/// the owning word; the flavor is stored relative to the strand's traversal
/// direction (start towards end).
struct Decoration {
  std::string label;
  Flavor flavor = Flavor::plain;

  auto operator<=>(const Decoration&) const = default;
};

// ---------------------------------------------------------------------------
// Endpoints and strands
// ---------------------------------------------------------------------------

enum class EndpointKind : std::uint8_t {
  top_boundary = 0,
  bottom_boundary = 1,
  ket_terminal = 2,
  bra_terminal = 3,
};

/// One end of a strand: a boundary point (by 0-based index) or a state
/// terminal (by registry label). The ordering top < bottom < ket < bra picks
/// each strand's canonical start.
struct Endpoint {
  EndpointKind kind = EndpointKind::top_boundary;
  int index = 0;
  std::string label;

  static Endpoint top(int i) { return {EndpointKind::top_boundary, i, {}}; }
  static Endpoint bottom(int i) { return {EndpointKind::bottom_boundary, i, {}}; }
  static Endpoint ket(std::string l) {
    return {EndpointKind::ket_terminal, 0, std::move(l)};
  }
  static Endpoint bra(std::string l) {
    return {EndpointKind::bra_terminal, 0, std::move(l)};
  }

  bool is_boundary() const {
    return kind == EndpointKind::top_boundary || kind == EndpointKind::bottom_boundary;
  }
  bool is_terminal() const { return !is_boundary(); }
  /// Sources feed the wire (inputs and kets); sinks absorb it.
  bool is_source() const {
    return kind == EndpointKind::top_boundary || kind == EndpointKind::ket_terminal;
  }

  auto operator<=>(const Endpoint&) const = default;
};

inline std::string to_string(const Endpoint& e) {
  switch (e.kind) {
    case EndpointKind::top_boundary: return "T" + std::to_string(e.index);
    case EndpointKind::bottom_boundary: return "B" + std::to_string(e.index);
    case EndpointKind::ket_terminal: return "ket(" + e.label + ")";
    case EndpointKind::bra_terminal: return "bra(" + e.label + ")";
  }
  return "?";
}

/// A wire between two endpoints. `word` lists decorations in traversal order
/// from `start`; `apex` splits it into the two legs of a bent strand
/// (word[0..apex) sits on the start leg), and is -1 for straight strands.
/// `norm_weight` counts the 1/sqrt(d) factors the strand carries (1 for a
/// unit cup or cap, accumulated additively under composition).
struct Strand {
  Endpoint start;
  Endpoint end;
  std::vector<Decoration> word;
  int apex = -1;
  int norm_weight = 0;

  /// Bent strands connect two sources or two sinks (cups, caps and their
  /// terminal-ended relatives); straight strands run source to sink.
  bool is_bent() const { return start.is_source() == end.is_source(); }

  auto operator<=>(const Strand&) const = default;
};

/// A closed circle: a cyclic decoration word plus its absorbed 1/sqrt(d)
/// count. Value under evaluation: tr(chain) * d^(-norm_weight/2).
struct Loop {
  std::vector<Decoration> word;
  int norm_weight = 0;

  auto operator<=>(const Loop&) const = default;
};

// ---------------------------------------------------------------------------
// Diagram
// ---------------------------------------------------------------------------

using Cx = std::complex<double>;

/// The IR: a decorated matching of boundary points and terminals, plus free
/// loops and a scalar. Maps the top boundary space to the bottom boundary
/// space. Immutable by convention: every operation returns a new value.
struct Diagram {
  int upper_arity = 0;
  int lower_arity = 0;
  std::vector<Strand> strands;
  std::vector<Loop> loops;
  Cx scalar = 1.0;

  bool operator==(const Diagram&) const = default;

  void validate() const;
};

/// Formal complex-linear combination of diagrams sharing one signature.
/// The empty sum is the zero map of the stored signature.
struct DiagramSum {
  int upper_arity = 0;
  int lower_arity = 0;
  std::vector<std::pair<Cx, Diagram>> terms;

  static DiagramSum zero(int upper, int lower) { return {upper, lower, {}}; }
  static DiagramSum of(Diagram d, Cx coefficient = 1.0) {
    DiagramSum s{d.upper_arity, d.lower_arity, {}};
    s.terms.emplace_back(coefficient, std::move(d));
    return s;
  }

  bool operator==(const DiagramSum&) const = default;
};

// ---------------------------------------------------------------------------
// Canonical form helpers
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<Decoration> reversed_toggled(const std::vector<Decoration>& w) {
  std::vector<Decoration> out(w.rbegin(), w.rend());
  for (auto& dec : out) dec.flavor = transpose_toggled(dec.flavor);
  return out;
}

/// Flip a strand end-for-end: a pure re-presentation (the traversal-relative
/// flavors toggle transpose-ness so the meaning is unchanged).
inline void flip_strand(Strand& s) {
  std::swap(s.start, s.end);
  const int len = static_cast<int>(s.word.size());
  s.word = reversed_toggled(s.word);
  if (s.apex >= 0) s.apex = len - s.apex;
}

/// Orient so start <= end; for equal endpoints pick the lexicographically
/// smaller word reading. Keeps hashing and equality deterministic.
inline void canonicalize_strand(Strand& s) {
  if (s.end < s.start) {
    flip_strand(s);
  } else if (s.end == s.start) {
    if (reversed_toggled(s.word) < s.word) flip_strand(s);
  }
  if (!s.is_bent()) s.apex = -1;
  else if (s.apex < 0 || s.apex > static_cast<int>(s.word.size()))
    s.apex = static_cast<int>(s.word.size());
}

/// Least rotation over both traversal directions of a cyclic word.
inline void canonicalize_loop(Loop& l) {
  if (l.word.size() < 2) return;
  std::vector<Decoration> best = l.word;
  auto consider = [&best](std::vector<Decoration> w) {
    for (std::size_t r = 0; r < w.size(); ++r) {
      if (w < best) best = w;
      std::rotate(w.begin(), w.begin() + 1, w.end());
    }
  };
  consider(l.word);
  consider(reversed_toggled(l.word));
  l.word = std::move(best);
}

inline void sort_diagram(Diagram& d) {
  for (auto& s : d.strands) canonicalize_strand(s);
  std::sort(d.strands.begin(), d.strands.end());
  for (auto& l : d.loops) canonicalize_loop(l);
  std::sort(d.loops.begin(), d.loops.end());
}

// -- generic chain tracing (shared by compose, close and partial_close) -----

/// Port id: 2 * segment index + (1 if the end side). `partner[p]` is the port
/// glued to p, or -1 when p is free.
struct ChainResult {
  std::vector<Strand> strands;  // endpoints still in segment coordinates
  std::vector<Loop> loops;
};

inline ChainResult trace_chains(const std::vector<Strand>& segs,
                                const std::vector<int>& partner) {
  ChainResult out;
  std::vector<char> visited(segs.size(), 0);

  auto endpoint_at = [&segs](int port) -> const Endpoint& {
    const auto& s = segs[static_cast<std::size_t>(port) / 2];
    return (port & 1) ? s.end : s.start;
  };

  // Open chains first: start from every free port in ascending order.
  for (int p0 = 0; p0 < static_cast<int>(partner.size()); ++p0) {
    if (partner[p0] != -1) continue;
    const std::size_t first_seg = static_cast<std::size_t>(p0) / 2;
    if (visited[first_seg]) continue;

    Strand chain;
    chain.start = endpoint_at(p0);
    int decorated_segments = 0;
    int chain_apex = -1;  // valid only when exactly one decorated bent segment
    int cur = p0;
    while (true) {
      const std::size_t s = static_cast<std::size_t>(cur) / 2;
      const bool entered_at_end = (cur & 1) != 0;
      visited[s] = 1;
      const auto& seg = segs[s];
      if (!seg.word.empty()) {
        ++decorated_segments;
        if (decorated_segments == 1 && seg.is_bent()) {
          const int len = static_cast<int>(seg.word.size());
          chain_apex = static_cast<int>(chain.word.size()) +
                       (entered_at_end ? len - seg.apex : seg.apex);
        }
        const auto piece = entered_at_end ? reversed_toggled(seg.word) : seg.word;
        chain.word.insert(chain.word.end(), piece.begin(), piece.end());
      }
      chain.norm_weight += seg.norm_weight;
      const int exit_port = static_cast<int>(2 * s) + (entered_at_end ? 0 : 1);
      if (partner[exit_port] == -1) {
        chain.end = endpoint_at(exit_port);
        break;
      }
      cur = partner[exit_port];
    }
    chain.apex = (decorated_segments == 1) ? chain_apex : -1;
    out.strands.push_back(std::move(chain));
  }

  // Whatever is left sits on cycles.
  for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
    if (visited[s0]) continue;
    Loop loop;
    int cur = static_cast<int>(2 * s0);  // enter at start
    do {
      const std::size_t s = static_cast<std::size_t>(cur) / 2;
      const bool entered_at_end = (cur & 1) != 0;
      visited[s] = 1;
      const auto& seg = segs[s];
      const auto piece = entered_at_end ? reversed_toggled(seg.word) : seg.word;
      loop.word.insert(loop.word.end(), piece.begin(), piece.end());
      loop.norm_weight += seg.norm_weight;
      const int exit_port = static_cast<int>(2 * s) + (entered_at_end ? 0 : 1);
      cur = partner[exit_port];
    } while (cur != static_cast<int>(2 * s0));
    out.loops.push_back(std::move(loop));
  }
  return out;
}

/// Apex for a freshly assembled chain whose decorations did not come from a
/// single bent segment: all on the start leg.
inline void default_apex(Strand& s) {
  if (!s.is_bent())
    s.apex = -1;
  else if (s.apex < 0)
    s.apex = static_cast<int>(s.word.size());
}

}  // namespace detail

inline void Diagram::validate() const {
  if (upper_arity < 0 || lower_arity < 0)
    fail(ErrorCode::invalid_argument, "negative arity");
  if (!std::isfinite(scalar.real()) || !std::isfinite(scalar.imag()))
    fail(ErrorCode::invalid_argument, "non-finite scalar");
  std::vector<int> top_seen(upper_arity, 0), bottom_seen(lower_arity, 0);
  auto see = [&](const Endpoint& e) {
    if (e.kind == EndpointKind::top_boundary) {
      if (e.index < 0 || e.index >= upper_arity)
        fail(ErrorCode::invalid_argument, "top index out of range");
      ++top_seen[e.index];
    } else if (e.kind == EndpointKind::bottom_boundary) {
      if (e.index < 0 || e.index >= lower_arity)
        fail(ErrorCode::invalid_argument, "bottom index out of range");
      ++bottom_seen[e.index];
    }
  };
  for (const auto& s : strands) {
    see(s.start);
    see(s.end);
    if (s.start.is_boundary() && s.start == s.end)
      fail(ErrorCode::invalid_argument, "strand with two identical boundary endpoints");
    if (s.is_bent()) {
      if (s.apex < 0 || s.apex > static_cast<int>(s.word.size()))
        fail(ErrorCode::invalid_argument, "bent strand with invalid apex");
    } else if (s.apex != -1) {
      fail(ErrorCode::invalid_argument, "straight strand with an apex");
    }
    if (s.norm_weight < 0)
      fail(ErrorCode::invalid_argument, "negative normalization weight");
  }
  for (int i = 0; i < upper_arity; ++i)
    if (top_seen[i] != 1)
      fail(ErrorCode::invalid_argument,
           "top boundary point " + std::to_string(i) + " covered " +
               std::to_string(top_seen[i]) + " times");
  for (int i = 0; i < lower_arity; ++i)
    if (bottom_seen[i] != 1)
      fail(ErrorCode::invalid_argument,
           "bottom boundary point " + std::to_string(i) + " covered " +
               std::to_string(bottom_seen[i]) + " times");
  for (const auto& l : loops)
    if (l.norm_weight < 0)
      fail(ErrorCode::invalid_argument, "negative loop normalization weight");
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

inline Diagram identity(int n) {
  if (n < 0) fail(ErrorCode::invalid_argument, "identity arity must be >= 0");
  Diagram d;
  d.upper_arity = d.lower_arity = n;
  for (int i = 0; i < n; ++i)
    d.strands.push_back({Endpoint::top(i), Endpoint::bottom(i), {}, -1, 0});
  return d;
}

/// |Omega>: arities (0,2), one cup carrying its 1/sqrt(d).
inline Diagram ket_cup() {
  Diagram d;
  d.upper_arity = 0;
  d.lower_arity = 2;
  d.strands.push_back({Endpoint::bottom(0), Endpoint::bottom(1), {}, 0, 1});
  return d;
}

/// <Omega|: arities (2,0).
inline Diagram bra_cap() {
  Diagram d;
  d.upper_arity = 2;
  d.lower_arity = 0;
  d.strands.push_back({Endpoint::top(0), Endpoint::top(1), {}, 0, 1});
  return d;
}

inline Diagram ket(std::string label) {
  Diagram d;
  d.upper_arity = 0;
  d.lower_arity = 1;
  d.strands.push_back({Endpoint::bottom(0), Endpoint::ket(std::move(label)), {}, -1, 0});
  return d;
}

inline Diagram bra(std::string label) {
  Diagram d;
  d.upper_arity = 1;
  d.lower_arity = 0;
  d.strands.push_back({Endpoint::top(0), Endpoint::bra(std::move(label)), {}, -1, 0});
  return d;
}

/// A single wire carrying one operator mark: evaluates to the flavored matrix.
inline Diagram op_wire(std::string label, Flavor flavor = Flavor::plain) {
  Diagram d = identity(1);
  d.strands[0].word.push_back({std::move(label), flavor});
  return d;
}

/// The projector omega = |Omega><Omega| as the (2,2) diagram {cap T0-T1,
/// cup B0-B1}: the cap consumes the input, the cup emits the output.
inline Diagram omega_projector() {
  Diagram d;
  d.upper_arity = 2;
  d.lower_arity = 2;
  d.strands.push_back({Endpoint::top(0), Endpoint::top(1), {}, 0, 1});
  d.strands.push_back({Endpoint::bottom(0), Endpoint::bottom(1), {}, 0, 1});
  return d;
}

inline Diagram scaled(Diagram d, Cx c) {
  d.scalar *= c;
  return d;
}

// ---------------------------------------------------------------------------
// Tensor product
// ---------------------------------------------------------------------------

inline Diagram tensor(const Diagram& a, const Diagram& b) {
  Diagram out;
  out.upper_arity = a.upper_arity + b.upper_arity;
  out.lower_arity = a.lower_arity + b.lower_arity;
  out.strands = a.strands;
  auto shift = [&](Endpoint e) {
    if (e.kind == EndpointKind::top_boundary) e.index += a.upper_arity;
    if (e.kind == EndpointKind::bottom_boundary) e.index += a.lower_arity;
    return e;
  };
  for (Strand s : b.strands) {
    s.start = shift(s.start);
    s.end = shift(s.end);
    out.strands.push_back(std::move(s));
  }
  out.loops = a.loops;
  out.loops.insert(out.loops.end(), b.loops.begin(), b.loops.end());
  out.scalar = a.scalar * b.scalar;
  detail::sort_diagram(out);
  return out;
}

// ---------------------------------------------------------------------------
// Vertical composition
// ---------------------------------------------------------------------------

/// Apply `first`, then `second`: first's bottom boundary is glued to second's
/// top boundary, so evaluate(compose(f, s)) = evaluate(s) * evaluate(f).
inline Diagram compose(const Diagram& first, const Diagram& second) {
  if (first.lower_arity != second.upper_arity)
    fail(ErrorCode::arity_mismatch,
         "compose: first has lower arity " + std::to_string(first.lower_arity) +
             " but second has upper arity " + std::to_string(second.upper_arity));

  std::vector<Strand> segs = first.strands;
  const std::size_t split = segs.size();
  segs.insert(segs.end(), second.strands.begin(), second.strands.end());

  std::vector<int> partner(2 * segs.size(), -1);
  const int glue_n = first.lower_arity;
  std::vector<int> first_bottom_port(glue_n, -1), second_top_port(glue_n, -1);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const bool from_first = i < split;
    auto note = [&](const Endpoint& e, int port) {
      if (from_first && e.kind == EndpointKind::bottom_boundary)
        first_bottom_port[e.index] = port;
      if (!from_first && e.kind == EndpointKind::top_boundary)
        second_top_port[e.index] = port;
    };
    note(segs[i].start, static_cast<int>(2 * i));
    note(segs[i].end, static_cast<int>(2 * i + 1));
  }
  for (int k = 0; k < glue_n; ++k) {
    if (first_bottom_port[k] < 0 || second_top_port[k] < 0)
      fail(ErrorCode::invalid_argument,
           "compose: boundary point " + std::to_string(k) + " not covered");
    partner[first_bottom_port[k]] = second_top_port[k];
    partner[second_top_port[k]] = first_bottom_port[k];
  }

  auto traced = detail::trace_chains(segs, partner);

  Diagram out;
  out.upper_arity = first.upper_arity;
  out.lower_arity = second.lower_arity;
  out.scalar = first.scalar * second.scalar;
  out.strands = std::move(traced.strands);
  for (auto& s : out.strands) detail::default_apex(s);
  out.loops = first.loops;
  out.loops.insert(out.loops.end(), second.loops.begin(), second.loops.end());
  out.loops.insert(out.loops.end(), traced.loops.begin(), traced.loops.end());
  detail::sort_diagram(out);
  return out;
}

// ---------------------------------------------------------------------------
// Dagger
// ---------------------------------------------------------------------------

/// Vertical flip. Contract: evaluate(dagger(D)) = evaluate(D)^dag.
inline Diagram dagger(const Diagram& d) {
  auto flip = [](Endpoint e) {
    switch (e.kind) {
      case EndpointKind::top_boundary: e.kind = EndpointKind::bottom_boundary; break;
      case EndpointKind::bottom_boundary: e.kind = EndpointKind::top_boundary; break;
      case EndpointKind::ket_terminal: e.kind = EndpointKind::bra_terminal; break;
      case EndpointKind::bra_terminal: e.kind = EndpointKind::ket_terminal; break;
    }
    return e;
  };

  Diagram out;
  out.upper_arity = d.lower_arity;
  out.lower_arity = d.upper_arity;
  out.scalar = std::conj(d.scalar);
  for (const auto& s : d.strands) {
    Strand t;
    const Endpoint fs = flip(s.start), fe = flip(s.end);
    if (fe < fs) {
      // New traversal runs against the old one: the mirrored boxes read in
      // reverse order, each becoming its adjoint.
      t.start = fe;
      t.end = fs;
      t.word.assign(s.word.rbegin(), s.word.rend());
      for (auto& dec : t.word) dec.flavor = adjoint_toggled(dec.flavor);
      t.apex = s.is_bent() ? static_cast<int>(s.word.size()) - s.apex : -1;
    } else {
      // Same traversal order (cup <-> cap): mirroring alone re-orients each
      // box across the flow, so adjoint composed with that re-reading leaves
      // a plain conjugation.
      t.start = fs;
      t.end = fe;
      t.word = s.word;
      for (auto& dec : t.word) dec.flavor = conjugate_toggled(dec.flavor);
      t.apex = s.apex;
    }
    t.norm_weight = s.norm_weight;
    out.strands.push_back(std::move(t));
  }
  for (Loop l : d.loops) {
    for (auto& dec : l.word) dec.flavor = conjugate_toggled(dec.flavor);
    out.loops.push_back(std::move(l));
  }
  detail::sort_diagram(out);
  return out;
}

// ---------------------------------------------------------------------------
// Decoration insertion
// ---------------------------------------------------------------------------

enum class Leg : std::uint8_t { near_start = 0, near_end = 1 };

/// Insert an operator mark with its *physical* flavor: `flavor` is what the
/// mark denotes when read with the wire's flow (top-to-bottom time). On leg
/// segments whose flow runs against the stored traversal direction the
/// stored flavor toggles transpose-ness, which is exactly the cup/cap
/// sliding rule. `position` counts within the chosen leg along traversal;
/// by default the mark is appended at the leg's end.
inline Diagram decorate(const Diagram& d, std::size_t strand_index, Leg leg,
                        std::string label, Flavor flavor, int position = -1) {
  if (strand_index >= d.strands.size())
    fail(ErrorCode::invalid_strand,
         "decorate: no strand " + std::to_string(strand_index));
  Diagram out = d;
  Strand& s = out.strands[strand_index];

  const bool counterflow = (leg == Leg::near_start) ? !s.start.is_source()
                                                    : s.end.is_source();
  const Flavor stored = counterflow ? transpose_toggled(flavor) : flavor;

  int lo = 0, hi = static_cast<int>(s.word.size());
  if (s.is_bent()) {
    if (leg == Leg::near_start) hi = s.apex;
    else lo = s.apex;
  }
  int at = (position < 0) ? hi : lo + position;
  if (at < lo || at > hi)
    fail(ErrorCode::invalid_argument, "decorate: position outside the leg");
  s.word.insert(s.word.begin() + at, Decoration{std::move(label), stored});
  if (s.is_bent() && leg == Leg::near_start) ++s.apex;
  detail::sort_diagram(out);
  return out;
}

// ---------------------------------------------------------------------------
// Planarity
// ---------------------------------------------------------------------------

/// Standard Temperley-Lieb membership: the boundary matching drawn on a
/// rectangle is non-crossing. Crossing matchings are Brauer diagrams.
inline bool is_tl_planar(const Diagram& d) {
  const int total = d.upper_arity + d.lower_arity;
  std::vector<int> mate(total, -1);
  auto position = [&](const Endpoint& e) {
    return e.kind == EndpointKind::top_boundary
               ? e.index
               : d.upper_arity + (d.lower_arity - 1 - e.index);
  };
  for (const auto& s : d.strands) {
    if (s.start.is_terminal() || s.end.is_terminal())
      fail(ErrorCode::terminal_present, "is_tl_planar: diagram has terminals");
    const int a = position(s.start), b = position(s.end);
    mate[a] = b;
    mate[b] = a;
  }
  std::vector<int> stack;
  for (int p = 0; p < total; ++p) {
    if (!stack.empty() && stack.back() == mate[p]) stack.pop_back();
    else stack.push_back(p);
  }
  return stack.empty();
}

// ---------------------------------------------------------------------------
// Hashing / comparison
// ---------------------------------------------------------------------------

namespace detail {

struct Fnv {
  std::uint64_t h = 1469598103934665603ULL;
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void i(int v) { u64(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
  void str(const std::string& s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
  void d(double v) { bytes(&v, sizeof v); }
  void endpoint(const Endpoint& e) {
    i(static_cast<int>(e.kind));
    i(e.index);
    str(e.label);
  }
  void word(const std::vector<Decoration>& w) {
    u64(w.size());
    for (const auto& dec : w) {
      str(dec.label);
      i(static_cast<int>(dec.flavor));
    }
  }
};

}  // namespace detail

inline std::uint64_t structural_hash(const Diagram& d) {
  detail::Fnv f;
  f.i(d.upper_arity);
  f.i(d.lower_arity);
  f.u64(d.strands.size());
  for (const auto& s : d.strands) {
    f.endpoint(s.start);
    f.endpoint(s.end);
    f.word(s.word);
    f.i(s.apex);
    f.i(s.norm_weight);
  }
  f.u64(d.loops.size());
  for (const auto& l : d.loops) {
    f.word(l.word);
    f.i(l.norm_weight);
  }
  f.d(d.scalar.real());
  f.d(d.scalar.imag());
  return f.h;
}

/// Structural identity up to floating error in the scalar.
inline bool approx_equal(const Diagram& a, const Diagram& b, double tol = 1e-12) {
  return a.upper_arity == b.upper_arity && a.lower_arity == b.lower_arity &&
         a.strands == b.strands && a.loops == b.loops &&
         std::abs(a.scalar - b.scalar) <= tol;
}

inline std::string to_string(const Strand& s) {
  std::ostringstream os;
  os << to_string(s.start) << "~" << to_string(s.end) << " [";
  for (std::size_t i = 0; i < s.word.size(); ++i) {
    if (i) os << ", ";
    os << s.word[i].label;
    switch (s.word[i].flavor) {
      case Flavor::plain: break;
      case Flavor::transpose: os << "^T"; break;
      case Flavor::conjugate: os << "^*"; break;
      case Flavor::adjoint: os << "^dag"; break;
    }
  }
  os << "]";
  if (s.apex >= 0) os << " apex=" << s.apex;
  if (s.norm_weight) os << " w=" << s.norm_weight;
  return os.str();
}

inline std::string to_string(const Diagram& d) {
  std::ostringstream os;
  os << "(" << d.upper_arity << "," << d.lower_arity << ") scalar=" << d.scalar.real();
  if (d.scalar.imag() != 0)
    os << (d.scalar.imag() > 0 ? "+" : "") << d.scalar.imag() << "i";
  os << " {";
  for (std::size_t i = 0; i < d.strands.size(); ++i) {
    if (i) os << "; ";
    os << to_string(d.strands[i]);
  }
  os << "}";
  if (!d.loops.empty()) {
    os << " loops=" << d.loops.size();
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// DiagramSum algebra
// ---------------------------------------------------------------------------

namespace detail {

inline void check_signature(const DiagramSum& s) {
  for (const auto& [c, d] : s.terms) {
    (void)c;
    if (d.upper_arity != s.upper_arity || d.lower_arity != s.lower_arity)
      fail(ErrorCode::arity_mismatch, "diagram sum term with mismatched signature");
  }
}

}  // namespace detail

inline DiagramSum add(const DiagramSum& a, const DiagramSum& b) {
  if (a.upper_arity != b.upper_arity || a.lower_arity != b.lower_arity)
    fail(ErrorCode::arity_mismatch, "sum of diagram sums with mismatched signature");
  DiagramSum out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

inline DiagramSum scaled(DiagramSum s, Cx c) {
  for (auto& [coeff, d] : s.terms) coeff *= c;
  return s;
}

inline DiagramSum tensor(const DiagramSum& a, const DiagramSum& b) {
  DiagramSum out = DiagramSum::zero(a.upper_arity + b.upper_arity,
                                    a.lower_arity + b.lower_arity);
  for (const auto& [ca, da] : a.terms)
    for (const auto& [cb, db] : b.terms)
      out.terms.emplace_back(ca * cb, tensor(da, db));
  return out;
}

inline DiagramSum compose(const DiagramSum& a, const DiagramSum& b) {
  if (a.lower_arity != b.upper_arity)
    fail(ErrorCode::arity_mismatch,
         "compose: first has lower arity " + std::to_string(a.lower_arity) +
             " but second has upper arity " + std::to_string(b.upper_arity));
  DiagramSum out = DiagramSum::zero(a.upper_arity, b.lower_arity);
  for (const auto& [ca, da] : a.terms)
    for (const auto& [cb, db] : b.terms)
      out.terms.emplace_back(ca * cb, compose(da, db));
  return out;
}

inline DiagramSum dagger(const DiagramSum& s) {
  DiagramSum out = DiagramSum::zero(s.lower_arity, s.upper_arity);
  for (const auto& [c, d] : s.terms) out.terms.emplace_back(std::conj(c), dagger(d));
  return out;
}

inline DiagramSum tensor(const DiagramSum& a, const Diagram& b) {
  return tensor(a, DiagramSum::of(b));
}
inline DiagramSum tensor(const Diagram& a, const DiagramSum& b) {
  return tensor(DiagramSum::of(a), b);
}
inline DiagramSum compose(const DiagramSum& a, const Diagram& b) {
  return compose(a, DiagramSum::of(b));
}
inline DiagramSum compose(const Diagram& a, const DiagramSum& b) {
  return compose(DiagramSum::of(a), b);
}

}  // namespace tlcalc
