#ifndef CHOWZERO_LOCUS_HPP_
#define CHOWZERO_LOCUS_HPP_

#include <functional>
#include <string>
#include <string_view>

#include "chowzero/graph.hpp"

namespace chowzero {

// A set of prestable graphs meant to be closed under edge contraction, so
// that it describes an open union of strata.
class LocusPredicate {
 public:
  using Test = std::function<bool(const PrestableGraph&)>;

  static LocusPredicate all();
  static LocusPredicate max_nodes(int edges);
  static LocusPredicate stable();
  static LocusPredicate semistable();
  // Chains on three markings: legs {2,3} at one end, leg 1 at the other.
  static LocusPredicate chain_t();
  static LocusPredicate custom(std::string name, Test test);

  // Accepts the canonical names: all, max-nodes=E, stable, semistable, chain-T.
  // Throws std::invalid_argument otherwise.
  static LocusPredicate parse(std::string_view name);

  const std::string& name() const { return name_; }
  bool accepts_everything() const { return everything_; }
  bool operator()(const PrestableGraph& g) const { return test_(g); }

 private:
  LocusPredicate(std::string name, Test test, bool everything = false)
      : name_(std::move(name)), test_(std::move(test)), everything_(everything) {}

  std::string name_;
  Test test_;
  bool everything_ = false;
};

// True iff every accepted graph with at most max_edges edges stays accepted
// after contracting any one of its edges.
bool verify_locus(const LocusPredicate& locus, int n, int max_edges);

}  // namespace chowzero

#endif  // CHOWZERO_LOCUS_HPP_
