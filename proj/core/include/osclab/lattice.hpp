// lattice.hpp - finite boxes in Z^nu, site sets and graph Laplacians.
#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace osc {

using SiteIndex = std::size_t;
using Coordinate = std::vector<int>;

enum class BoundaryCondition { neumann, dirichlet };

const char* to_string(BoundaryCondition bc) noexcept;

// Box [a_1,b_1] x ... x [a_nu,b_nu] with row-major site enumeration: the last
// coordinate varies fastest.
class BoxGeometry {
 public:
  explicit BoxGeometry(std::vector<std::pair<int, int>> intervals);

  // [0, length-1]
  static BoxGeometry chain(int length);
  // [0, side-1]^nu
  static BoxGeometry cube(int nu, int side);

  int dimension() const noexcept { return static_cast<int>(intervals_.size()); }
  std::size_t size() const noexcept { return size_; }
  const std::vector<std::pair<int, int>>& intervals() const noexcept { return intervals_; }

  Coordinate coordinate(SiteIndex x) const;
  SiteIndex index(std::span<const int> coord) const;
  SiteIndex index(std::initializer_list<int> coord) const {
    return index(std::span<const int>(coord.begin(), coord.size()));
  }
  bool contains(std::span<const int> coord) const noexcept;

  int l1_distance(SiteIndex x, SiteIndex y) const;
  // n_Lambda(x): number of nearest neighbours inside the box.
  int degree(SiteIndex x) const;
  std::vector<SiteIndex> neighbors(SiteIndex x) const;
  int diameter() const noexcept;
  // Site closest to the geometric centre (rounding down).
  SiteIndex center() const;

  bool operator==(const BoxGeometry& other) const noexcept {
    return intervals_ == other.intervals_;
  }

 private:
  void check_site(SiteIndex x) const;

  std::vector<std::pair<int, int>> intervals_;
  std::vector<std::size_t> extents_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

// Sorted, duplicate-free set of site indices of some box.
class SiteSet {
 public:
  SiteSet() = default;
  explicit SiteSet(std::vector<SiteIndex> sites);
  static SiteSet all(const BoxGeometry& box);
  static SiteSet single(SiteIndex x) { return SiteSet({x}); }

  bool contains(SiteIndex x) const noexcept;
  bool empty() const noexcept { return sites_.empty(); }
  std::size_t size() const noexcept { return sites_.size(); }
  const std::vector<SiteIndex>& sites() const noexcept { return sites_; }
  auto begin() const noexcept { return sites_.begin(); }
  auto end() const noexcept { return sites_.end(); }

  // Throws std::invalid_argument if any index is outside the box.
  void validate(const BoxGeometry& box) const;

  bool operator==(const SiteSet&) const = default;

 private:
  std::vector<SiteIndex> sites_;
};

// dist(x, X) for every site of the box (multi-source BFS).
std::vector<int> distance_to_set(const BoxGeometry& box, const SiteSet& set);

// X(n) = {x : dist(x, X) <= n}
SiteSet neighborhood(const BoxGeometry& box, const SiteSet& set, int n);

// Sites of X with a nearest neighbour in the complement.
SiteSet boundary(const BoxGeometry& box, const SiteSet& set);

Eigen::MatrixXd neumann_laplacian(const BoxGeometry& box);
// Neumann Laplacian plus the diagonal 2(2 nu - n_Lambda(x)).
Eigen::MatrixXd dirichlet_laplacian(const BoxGeometry& box);
Eigen::MatrixXd laplacian(const BoxGeometry& box, BoundaryCondition bc);

}  // namespace osc
