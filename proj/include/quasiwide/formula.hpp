#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quasiwide/error.hpp"
#include "quasiwide/graph.hpp"

namespace quasiwide {

enum class FormulaKind : std::uint8_t { Edge, Phi, Psi };

/// One formula of the family Delta_k:
///   Edge          E(x1, x2)
///   Phi(i, k)     exists y adjacent to x1..xi and non-adjacent to x(i+1)..xk
///   Psi(i, k)     exists y adjacent to x(i+1)..xk and non-adjacent to x1..xi
/// Adjacency is the open edge relation; no vertex is adjacent to itself.
struct FormulaId {
  FormulaKind kind = FormulaKind::Edge;
  std::uint32_t i = 0;
  std::uint32_t k = 2;

  static FormulaId edge() { return {FormulaKind::Edge, 0, 2}; }
  static FormulaId phi(std::uint32_t i, std::uint32_t k) { return validated({FormulaKind::Phi, i, k}); }
  static FormulaId psi(std::uint32_t i, std::uint32_t k) { return validated({FormulaKind::Psi, i, k}); }

  std::uint32_t arity() const { return k; }
  bool has_witness() const { return kind != FormulaKind::Edge; }

  /// Whether the witness must be adjacent to argument `p` (0-based).
  bool positive(std::uint32_t p) const { return kind == FormulaKind::Phi ? p < i : p >= i; }

  std::string name() const {
    switch (kind) {
      case FormulaKind::Edge:
        return "E";
      case FormulaKind::Phi:
        return "phi_" + std::to_string(i) + "/" + std::to_string(k);
      case FormulaKind::Psi:
        return "psi_" + std::to_string(i) + "/" + std::to_string(k);
    }
    return "?";
  }

  friend bool operator==(const FormulaId&, const FormulaId&) = default;

 private:
  static FormulaId validated(FormulaId f) {
    if (f.k < 1 || f.i < 1 || f.i > f.k) {
      throw InputError("formula index out of range: i=" + std::to_string(f.i) + " k=" + std::to_string(f.k));
    }
    return f;
  }
};

/// Ordered, duplicate-free formula family.
class Delta {
 public:
  Delta() = default;
  explicit Delta(std::vector<FormulaId> formulas) : formulas_(std::move(formulas)) {
    for (std::size_t a = 0; a < formulas_.size(); ++a) {
      for (std::size_t b = a + 1; b < formulas_.size(); ++b) {
        if (formulas_[a] == formulas_[b]) throw InputError("duplicate formula " + formulas_[a].name() + " in Delta");
      }
    }
  }

  static Delta edge_only() { return Delta({FormulaId::edge()}); }

  /// {E} followed by phi_1..phi_k, then psi_1..psi_k.
  static Delta delta_k(std::uint32_t k) {
    if (k < 1) throw InputError("Delta_k needs k >= 1");
    std::vector<FormulaId> fs{FormulaId::edge()};
    for (std::uint32_t i = 1; i <= k; ++i) fs.push_back(FormulaId::phi(i, k));
    for (std::uint32_t i = 1; i <= k; ++i) fs.push_back(FormulaId::psi(i, k));
    return Delta(std::move(fs));
  }

  std::span<const FormulaId> formulas() const { return formulas_; }
  std::size_t size() const { return formulas_.size(); }
  std::uint32_t max_arity() const {
    std::uint32_t k = 0;
    for (const auto& f : formulas_) k = std::max(k, f.arity());
    return k;
  }

 private:
  std::vector<FormulaId> formulas_;
};

/// Truth of f on `args` (|args| must equal the arity; repeats allowed).
/// The witness search scans the shortest neighbour list among the
/// positive arguments, or every vertex when there is none.
inline bool eval_formula(const Graph& g, const FormulaId& f, std::span<const Vertex> args) {
  if (args.size() != f.arity()) {
    throw InputError("formula " + f.name() + " expects " + std::to_string(f.arity()) + " arguments, got " +
                     std::to_string(args.size()));
  }
  for (Vertex a : args) g.check(a);
  if (!f.has_witness()) return g.adjacent_unchecked(args[0], args[1]);

  Vertex pivot = 0;
  bool have_pivot = false;
  for (std::uint32_t p = 0; p < args.size(); ++p) {
    if (f.positive(p) && (!have_pivot || g.degree(args[p]) < g.degree(pivot))) {
      pivot = args[p];
      have_pivot = true;
    }
  }
  auto witness = [&](Vertex y) {
    for (std::uint32_t p = 0; p < args.size(); ++p) {
      if (g.adjacent_unchecked(y, args[p]) != f.positive(p)) return false;
    }
    return true;
  };
  if (have_pivot) {
    for (Vertex y : g.neighbors(pivot)) {
      if (witness(y)) return true;
    }
    return false;
  }
  for (Vertex y = 0; y < g.num_vertices(); ++y) {
    if (witness(y)) return true;
  }
  return false;
}

inline bool eval_formula(const Graph& g, const FormulaId& f, std::initializer_list<Vertex> args) {
  return eval_formula(g, f, std::span<const Vertex>(args.begin(), args.size()));
}

}  // namespace quasiwide
