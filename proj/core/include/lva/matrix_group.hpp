#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lva/errors.hpp"
#include "lva/matrix.hpp"

namespace lva {

/// A finite group of exact square matrices, stored in discovery order with a
/// hash index for membership queries.
template <typename T>
class MatrixGroup {
 public:
  using Element = Matrix<T>;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  MatrixGroup() = default;

  /// Wraps an already closed element list; the caller guarantees closure.
  MatrixGroup(std::vector<Element> generators, std::vector<Element> elements)
      : generators_(std::move(generators)) {
    for (auto& e : elements) insert(std::move(e));
  }

  /// Breadth-first closure of the generators under left multiplication,
  /// starting from the identity of size dim. Throws ResourceCapExceeded once
  /// more than cap elements are found.
  static MatrixGroup closure(std::vector<Element> generators, std::size_t dim, std::size_t cap) {
    MatrixGroup g;
    g.generators_ = std::move(generators);
    g.insert(Element::identity(dim));
    for (std::size_t next = 0; next < g.elements_.size(); ++next) {
      for (const auto& gen : g.generators_) {
        Element p = gen * g.elements_[next];
        if (g.index_.count(p)) continue;
        if (g.elements_.size() >= cap) {
          throw ResourceCapExceeded("group closure exceeded the cap of " + std::to_string(cap) +
                                    " elements");
        }
        g.insert(std::move(p));
      }
    }
    return g;
  }

  std::size_t order() const { return elements_.size(); }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<Element>& generators() const { return generators_; }
  bool contains(const Element& m) const { return index_.count(m) != 0; }
  std::size_t index_of(const Element& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? npos : it->second;
  }

  /// Same element set, regardless of order.
  bool same_elements(const MatrixGroup& other) const {
    if (order() != other.order()) return false;
    for (const auto& e : elements_) {
      if (!other.contains(e)) return false;
    }
    return true;
  }

 private:
  void insert(Element e) {
    if (index_.count(e)) return;
    index_.emplace(e, elements_.size());
    elements_.push_back(std::move(e));
  }

  std::vector<Element> generators_;
  std::vector<Element> elements_;
  std::unordered_map<Element, std::size_t, MatrixHash> index_;
};

}  // namespace lva
