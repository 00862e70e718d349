#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sopml/formula.hpp"

namespace sopml {

// Set of worlds as a bitmask over world indices.
using WorldSet = std::uint64_t;
inline constexpr std::size_t kMaxWorlds = 64;

inline WorldSet singleton(std::size_t w) { return WorldSet{1} << w; }
inline bool contains(WorldSet s, std::size_t w) { return (s >> w) & 1U; }

class KripkeFrame {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  KripkeFrame(std::vector<std::string> worlds, const std::vector<Edge>& edges);
  // Worlds named w0, w1, ...; successors[k] is the successor set of world k.
  static KripkeFrame from_successors(const std::vector<WorldSet>& successors);

  std::size_t size() const { return names_.size(); }
  WorldSet all() const { return size() == kMaxWorlds ? ~WorldSet{0} : singleton(size()) - 1; }
  WorldSet successors(std::size_t w) const { return succ_.at(w); }
  WorldSet predecessors(std::size_t w) const { return pred_.at(w); }
  bool related(std::size_t a, std::size_t b) const { return contains(succ_.at(a), b); }
  const std::vector<std::string>& worlds() const { return names_; }
  // Throws InputError for unknown names.
  std::size_t index_of(const std::string& name) const;
  std::vector<Edge> edges() const;
  // World k of the result is world perm[k] of this frame.
  KripkeFrame permuted(const std::vector<std::size_t>& perm) const;

  friend bool operator==(const KripkeFrame& a, const KripkeFrame& b) {
    return a.names_ == b.names_ && a.succ_ == b.succ_;
  }

 private:
  KripkeFrame() = default;
  std::vector<std::string> names_;
  std::vector<WorldSet> succ_;
  std::vector<WorldSet> pred_;
};

struct Valuation {
  std::map<std::string, WorldSet> props;
  std::map<std::string, std::size_t> noms;
};

class KripkeModel {
 public:
  // Throws InputError if the valuation mentions worlds outside the frame.
  KripkeModel(KripkeFrame frame, Valuation valuation);
  const KripkeFrame& frame() const { return frame_; }
  const Valuation& valuation() const { return valuation_; }

 private:
  KripkeFrame frame_;
  Valuation valuation_;
};

// All functions taking a model throw UnassignedSymbol if a free symbol has no value.
WorldSet extension(const KripkeModel& m, const Formula& f);
bool eval_at(const KripkeModel& m, std::size_t w, const Formula& f);
bool holds_ineq(const KripkeModel& m, const Inequality& i);
bool holds_comp(const KripkeModel& m, const Complex& c);

// Validity quantifies over every value of the free propositional variables and nominals.
bool frame_valid(const KripkeFrame& f, const Formula& phi);
bool frame_valid(const KripkeFrame& f, const Complex& c);

// Every frame on worlds w0..w(n-1) for n = 1..max_size, in a fixed order; the
// callback returns false to stop early.
void for_each_frame(std::size_t max_size, const std::function<bool(const KripkeFrame&)>& visit);
std::vector<KripkeFrame> enumerate_frames(std::size_t max_size);
std::size_t frame_count(std::size_t max_size);

}  // namespace sopml
