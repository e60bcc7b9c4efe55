#include "osclab/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

namespace osc {

const char* to_string(BoundaryCondition bc) noexcept {
  return bc == BoundaryCondition::neumann ? "neumann" : "dirichlet";
}

BoxGeometry::BoxGeometry(std::vector<std::pair<int, int>> intervals)
    : intervals_(std::move(intervals)) {
  if (intervals_.empty()) {
    throw std::invalid_argument("BoxGeometry: dimension must be positive");
  }
  extents_.resize(intervals_.size());
  strides_.resize(intervals_.size());
  size_ = 1;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto [a, b] = intervals_[i];
    if (a > b) {
      throw std::invalid_argument("BoxGeometry: interval " + std::to_string(i) +
                                  " has a > b");
    }
    extents_[i] = static_cast<std::size_t>(b - a + 1);
  }
  for (std::size_t i = intervals_.size(); i-- > 0;) {
    strides_[i] = size_;
    size_ *= extents_[i];
  }
}

BoxGeometry BoxGeometry::chain(int length) {
  if (length < 1) throw std::invalid_argument("BoxGeometry::chain: length must be >= 1");
  return BoxGeometry({{0, length - 1}});
}

BoxGeometry BoxGeometry::cube(int nu, int side) {
  if (nu < 1 || side < 1) {
    throw std::invalid_argument("BoxGeometry::cube: dimension and side must be >= 1");
  }
  return BoxGeometry(std::vector<std::pair<int, int>>(static_cast<std::size_t>(nu), {0, side - 1}));
}

void BoxGeometry::check_site(SiteIndex x) const {
  if (x >= size_) {
    throw std::invalid_argument("site index " + std::to_string(x) + " outside box of " +
                                std::to_string(size_) + " sites");
  }
}

Coordinate BoxGeometry::coordinate(SiteIndex x) const {
  check_site(x);
  Coordinate c(intervals_.size());
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    c[i] = intervals_[i].first + static_cast<int>((x / strides_[i]) % extents_[i]);
  }
  return c;
}

bool BoxGeometry::contains(std::span<const int> coord) const noexcept {
  if (coord.size() != intervals_.size()) return false;
  for (std::size_t i = 0; i < coord.size(); ++i) {
    if (coord[i] < intervals_[i].first || coord[i] > intervals_[i].second) return false;
  }
  return true;
}

SiteIndex BoxGeometry::index(std::span<const int> coord) const {
  if (!contains(coord)) throw std::invalid_argument("coordinate outside box");
  SiteIndex x = 0;
  for (std::size_t i = 0; i < coord.size(); ++i) {
    x += static_cast<std::size_t>(coord[i] - intervals_[i].first) * strides_[i];
  }
  return x;
}

int BoxGeometry::l1_distance(SiteIndex x, SiteIndex y) const {
  check_site(x);
  check_site(y);
  int d = 0;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto xi = static_cast<long>((x / strides_[i]) % extents_[i]);
    const auto yi = static_cast<long>((y / strides_[i]) % extents_[i]);
    d += static_cast<int>(std::labs(xi - yi));
  }
  return d;
}

int BoxGeometry::degree(SiteIndex x) const {
  check_site(x);
  int n = 0;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto xi = (x / strides_[i]) % extents_[i];
    if (xi > 0) ++n;
    if (xi + 1 < extents_[i]) ++n;
  }
  return n;
}

std::vector<SiteIndex> BoxGeometry::neighbors(SiteIndex x) const {
  check_site(x);
  std::vector<SiteIndex> out;
  out.reserve(2 * intervals_.size());
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto xi = (x / strides_[i]) % extents_[i];
    if (xi > 0) out.push_back(x - strides_[i]);
    if (xi + 1 < extents_[i]) out.push_back(x + strides_[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int BoxGeometry::diameter() const noexcept {
  int d = 0;
  for (const auto& [a, b] : intervals_) d += b - a;
  return d;
}

SiteIndex BoxGeometry::center() const {
  Coordinate c(intervals_.size());
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    c[i] = intervals_[i].first + (intervals_[i].second - intervals_[i].first) / 2;
  }
  return index(c);
}

SiteSet::SiteSet(std::vector<SiteIndex> sites) : sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
}

SiteSet SiteSet::all(const BoxGeometry& box) {
  std::vector<SiteIndex> s(box.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
  return SiteSet(std::move(s));
}

bool SiteSet::contains(SiteIndex x) const noexcept {
  return std::binary_search(sites_.begin(), sites_.end(), x);
}

void SiteSet::validate(const BoxGeometry& box) const {
  if (!sites_.empty() && sites_.back() >= box.size()) {
    throw std::invalid_argument("site set contains index " + std::to_string(sites_.back()) +
                                " outside box");
  }
}

std::vector<int> distance_to_set(const BoxGeometry& box, const SiteSet& set) {
  if (set.empty()) throw std::invalid_argument("distance_to_set: empty site set");
  set.validate(box);
  std::vector<int> dist(box.size(), std::numeric_limits<int>::max());
  std::deque<SiteIndex> queue;
  for (SiteIndex x : set) {
    dist[x] = 0;
    queue.push_back(x);
  }
  // On a box the graph distance between sites equals the l1 distance.
  while (!queue.empty()) {
    const SiteIndex x = queue.front();
    queue.pop_front();
    for (SiteIndex y : box.neighbors(x)) {
      if (dist[y] == std::numeric_limits<int>::max()) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

SiteSet neighborhood(const BoxGeometry& box, const SiteSet& set, int n) {
  if (set.empty()) throw std::invalid_argument("neighborhood: empty site set");
  if (n < 0) throw std::invalid_argument("neighborhood: n must be nonnegative");
  const auto dist = distance_to_set(box, set);
  std::vector<SiteIndex> out;
  for (SiteIndex x = 0; x < box.size(); ++x) {
    if (dist[x] <= n) out.push_back(x);
  }
  return SiteSet(std::move(out));
}

SiteSet boundary(const BoxGeometry& box, const SiteSet& set) {
  set.validate(box);
  std::vector<SiteIndex> out;
  for (SiteIndex x : set) {
    for (SiteIndex y : box.neighbors(x)) {
      if (!set.contains(y)) {
        out.push_back(x);
        break;
      }
    }
  }
  return SiteSet(std::move(out));
}

Eigen::MatrixXd neumann_laplacian(const BoxGeometry& box) {
  const auto n = static_cast<Eigen::Index>(box.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (SiteIndex x = 0; x < box.size(); ++x) {
    const auto xi = static_cast<Eigen::Index>(x);
    for (SiteIndex y : box.neighbors(x)) {
      h(xi, xi) += 1.0;
      h(xi, static_cast<Eigen::Index>(y)) -= 1.0;
    }
  }
  return h;
}

Eigen::MatrixXd dirichlet_laplacian(const BoxGeometry& box) {
  Eigen::MatrixXd h = neumann_laplacian(box);
  const int full_degree = 2 * box.dimension();
  for (SiteIndex x = 0; x < box.size(); ++x) {
    const auto xi = static_cast<Eigen::Index>(x);
    h(xi, xi) += 2.0 * (full_degree - box.degree(x));
  }
  return h;
}

Eigen::MatrixXd laplacian(const BoxGeometry& box, BoundaryCondition bc) {
  return bc == BoundaryCondition::neumann ? neumann_laplacian(box) : dirichlet_laplacian(box);
}

}  // namespace osc
