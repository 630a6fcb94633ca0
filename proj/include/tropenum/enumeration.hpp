#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tropenum/fan.hpp"
#include "tropenum/tropcurve.hpp"

namespace tropenum {

struct BBox {
  std::int64_t xmin = -10, xmax = 10, ymin = -10, ymax = 10;
};

constexpr int kGenericityRetries = 32;

// Deterministic points with pairwise distinct prime denominators.
// attempt selects an independent stream for resampling.
std::vector<RatVec2> sample_generic_points(std::size_t k, std::uint64_t seed, const BBox& bbox = {},
                                           int attempt = 0);

// Runs fn on fresh samples until it stops throwing GenericityError.
// Returns the number of attempts used; throws GenericityError after the budget.
int with_generic_points(std::size_t k, std::uint64_t seed, const BBox& bbox,
                        const std::function<void(const std::vector<RatVec2>&)>& fn);

// Building block of the recursive enumeration. A disk piece is a Maslov index 2
// disk with boundary `base`, stem direction `dir` (the sum of its ends). A tree
// piece is a Maslov index 0 tree whose outgoing ray leaves `base` along `dir`.
struct Piece {
  enum class Kind { Ray, Split, FromMark, Glue };
  Kind kind = Kind::Ray;
  RatVec2 base;
  IntVec2 dir;
  RatVec2 vertex;  // Split: where the stem meets the tree
  std::vector<std::int64_t> ends;
  std::uint32_t mask = 0;  // bit i: marked point P_{i+1}
  Int mult = 1;
  int mark = -1;  // FromMark: index of the marked point at the root
  int ray = -1;   // Ray: fan ray index
  std::shared_ptr<const Piece> a, b;  // Split: tree, subdisk; FromMark: disk; Glue: trees

  bool is_tree() const { return kind == Kind::FromMark || kind == Kind::Glue; }
};
using PiecePtr = std::shared_ptr<const Piece>;

class Enumerator {
 public:
  // budget caps the number of ends per ray of every piece.
  Enumerator(const Fan& fan, std::vector<RatVec2> points, std::vector<std::int64_t> budget,
             unsigned jobs = 1);

  // Fills the memo tables for all masks inside `universe`.
  void prepare(std::uint32_t universe);

  const std::vector<PiecePtr>& trees(std::uint32_t mask) const;
  const std::vector<PiecePtr>& disks_at_mark(int j, std::uint32_t mask) const;

  // Disks with boundary q and marked set mask, optionally only with stem direction dir.
  std::vector<PiecePtr> disks(const RatVec2& q, std::uint32_t mask, const IntVec2& dir,
                              const std::vector<std::int64_t>& budget) const;
  std::vector<PiecePtr> disks_any(const RatVec2& q, std::uint32_t mask,
                                  const std::vector<std::int64_t>& budget) const;

  const Fan& fan() const { return fan_; }
  const std::vector<RatVec2>& points() const { return pts_; }
  const std::vector<std::int64_t>& budget() const { return budget_; }
  unsigned jobs() const { return jobs_; }

 private:
  std::vector<PiecePtr> compute_trees(std::uint32_t mask) const;
  std::vector<IntVec2> candidate_dirs(std::size_t nends, const std::vector<std::int64_t>& budget) const;

  Fan fan_;
  std::vector<RatVec2> pts_;
  std::vector<std::int64_t> budget_;
  unsigned jobs_;
  std::vector<std::vector<PiecePtr>> trees_;
  std::vector<bool> trees_ready_;
  std::vector<std::vector<std::vector<PiecePtr>>> at_mark_;  // [j][mask]
  std::vector<std::vector<bool>> at_mark_ready_;
};

// Canonical structural encoding (ray labels, marks, nesting).
std::string encode(const Piece& p);

// Materialization into explicit graphs.
TropicalDisk to_disk(const Piece& disk);
TropicalTree to_tree(const Piece& tree);

struct CurveSolution {
  ParamTropCurve curve;
  std::string type;
  Int mult = 1;
  std::int64_t welschinger = 0;
};

struct CountReport {
  static constexpr int kSchemaVersion = 1;
  Fan fan;
  Degree degree;
  std::vector<RatVec2> points;
  std::uint64_t seed = 0;
  int attempts = 1;
  std::vector<CurveSolution> curves;  // sorted by type
  Int n_trop = 0;
  Int w_trop = 0;

  std::vector<Int> multiplicities() const;  // sorted
};

// All simple rational curves of degree deg through the points (|points| = |deg| - 1).
CountReport enumerate_rational_curves(const Fan& fan, const Degree& deg,
                                      const std::vector<RatVec2>& points, unsigned jobs = 1);

// Samples generic points for the seed (with resampling) and enumerates.
CountReport count_report(const Fan& fan, const Degree& deg, std::uint64_t seed,
                         unsigned jobs = 1, const BBox& bbox = {});
Int count_n_trop(const Fan& fan, const Degree& deg, std::uint64_t seed);
Int count_w_trop(const Fan& fan, const Degree& deg, std::uint64_t seed);

struct TreeRecord {
  TropicalTree tree;
  PiecePtr piece;
  std::vector<std::int64_t> ends;  // Delta(h)
  std::uint32_t mask = 0;          // I(h)
  Int mult = 1;                    // Mult(h)
  std::int64_t out_weight = 1;     // w(E_out)
};

struct DiskRecord {
  TropicalDisk disk;
  PiecePtr piece;
  std::vector<std::int64_t> ends;
  std::uint32_t mask = 0;
  Int mult = 1;
};

std::vector<TreeRecord> enumerate_maslov0_trees(const Fan& fan, const std::vector<RatVec2>& points,
                                                unsigned jobs = 1);
std::vector<DiskRecord> enumerate_maslov2_disks(const Fan& fan, const std::vector<RatVec2>& points,
                                                const RatVec2& q, unsigned jobs = 1);

// Runs fn(i) for i in [0, n) on up to `jobs` threads; rethrows the first exception
// in index order.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace tropenum
