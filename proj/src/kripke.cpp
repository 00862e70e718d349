#include "sopml/kripke.hpp"

#include <algorithm>
#include <utility>

#include "sopml/error.hpp"

namespace sopml {

KripkeFrame::KripkeFrame(std::vector<std::string> worlds, const std::vector<Edge>& edges)
    : names_(std::move(worlds)) {
  if (names_.empty()) throw InputError("a frame needs at least one world");
  if (names_.size() > kMaxWorlds) throw InputError("frames are limited to 64 worlds");
  for (std::size_t a = 0; a < names_.size(); ++a) {
    for (std::size_t b = a + 1; b < names_.size(); ++b) {
      if (names_[a] == names_[b]) throw InputError("duplicate world '" + names_[a] + "'");
    }
  }
  succ_.assign(names_.size(), 0);
  pred_.assign(names_.size(), 0);
  for (const auto& [a, b] : edges) {
    if (a >= names_.size() || b >= names_.size()) throw InputError("edge refers to a missing world");
    succ_[a] |= singleton(b);
    pred_[b] |= singleton(a);
  }
}

KripkeFrame KripkeFrame::from_successors(const std::vector<WorldSet>& successors) {
  std::vector<std::string> names;
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < successors.size(); ++a) {
    names.push_back("w" + std::to_string(a));
    for (std::size_t b = 0; b < successors.size(); ++b) {
      if (contains(successors[a], b)) edges.emplace_back(a, b);
    }
  }
  return KripkeFrame(std::move(names), edges);
}

std::size_t KripkeFrame::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InputError("unknown world '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

std::vector<KripkeFrame::Edge> KripkeFrame::edges() const {
  std::vector<Edge> out;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = 0; b < size(); ++b) {
      if (related(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

KripkeFrame KripkeFrame::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != size()) throw InputError("permutation size mismatch");
  std::vector<std::size_t> inverse(size());
  for (std::size_t k = 0; k < size(); ++k) inverse.at(perm[k]) = k;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < size(); ++k) names.push_back(names_[perm[k]]);
  std::vector<Edge> es;
  for (const auto& [a, b] : edges()) es.emplace_back(inverse[a], inverse[b]);
  return KripkeFrame(std::move(names), es);
}

KripkeModel::KripkeModel(KripkeFrame frame, Valuation valuation)
    : frame_(std::move(frame)), valuation_(std::move(valuation)) {
  for (const auto& [name, set] : valuation_.props) {
    if ((set & ~frame_.all()) != 0) throw InputError("valuation of '" + name + "' leaves the frame");
  }
  for (const auto& [name, w] : valuation_.noms) {
    if (w >= frame_.size()) throw InputError("nominal '" + name + "' names a missing world");
  }
}

namespace {

// Formulas and complex inequalities compiled to an array program over numbered
// variable slots. Every slot holds a world set; nominal slots hold singletons.
struct Program {
  struct Node {
    int op;  // Op for formula nodes, 100 + CKind for complex nodes
    int a = -1;
    int b = -1;
    int slot = -1;
    std::vector<int> items;
  };
  std::vector<Node> nodes;
  std::vector<std::pair<std::string, int>> free_props;
  std::vector<std::pair<std::string, int>> free_noms;
  int slots = 0;
};

constexpr int kComplexBase = 100;

class Compiler {
 public:
  explicit Compiler(Program& p) : p_(p) {}

  int formula(const Formula& f) {
    Program::Node n;
    n.op = static_cast<int>(f.op());
    switch (f.op()) {
      case Op::Prop:
        n.slot = lookup(true, f.name());
        break;
      case Op::Nom:
        n.slot = lookup(false, f.name());
        break;
      case Op::Bot:
      case Op::Top:
        break;
      default:
        if (is_quantifier(f.op())) {
          n.slot = bind(binds_prop(f.op()), f.name());
          n.a = formula(f.body());
          unbind();
        } else {
          n.a = formula(f.lhs());
          if (is_binary(f.op())) n.b = formula(f.rhs());
        }
    }
    p_.nodes.push_back(std::move(n));
    return static_cast<int>(p_.nodes.size()) - 1;
  }

  int complex(const Complex& c) {
    Program::Node n;
    n.op = kComplexBase + static_cast<int>(c.kind());
    switch (c.kind()) {
      case CKind::Ineq:
        n.a = formula(c.lhs());
        n.b = formula(c.rhs());
        break;
      case CKind::Conj:
        for (const auto& x : c.items()) n.items.push_back(complex(x));
        break;
      case CKind::Implies:
        n.a = complex(c.item(0));
        n.b = complex(c.item(1));
        break;
      default:
        n.slot = bind(binds_prop(c.kind()), c.name());
        n.a = complex(c.body());
        unbind();
    }
    p_.nodes.push_back(std::move(n));
    return static_cast<int>(p_.nodes.size()) - 1;
  }

 private:
  int lookup(bool prop, const std::string& name) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->prop == prop && it->name == name) return it->slot;
    }
    auto& table = prop ? p_.free_props : p_.free_noms;
    for (const auto& [n, s] : table) {
      if (n == name) return s;
    }
    table.emplace_back(name, p_.slots);
    return p_.slots++;
  }

  int bind(bool prop, const std::string& name) {
    scope_.push_back({prop, name, p_.slots});
    return p_.slots++;
  }

  void unbind() { scope_.pop_back(); }

  struct Binding {
    bool prop;
    std::string name;
    int slot;
  };
  Program& p_;
  std::vector<Binding> scope_;
};

class Machine {
 public:
  Machine(const Program& p, const KripkeFrame& f)
      : p_(p), all_(f.all()), n_(f.size()), slots_(static_cast<std::size_t>(p.slots), 0) {
    for (std::size_t w = 0; w < n_; ++w) {
      succ_[w] = f.successors(w);
      pred_[w] = f.predecessors(w);
    }
  }

  WorldSet& slot(int s) { return slots_[static_cast<std::size_t>(s)]; }

  WorldSet eval(int idx) {
    const auto& n = p_.nodes[static_cast<std::size_t>(idx)];
    switch (static_cast<Op>(n.op)) {
      case Op::Prop:
      case Op::Nom:
        return slot(n.slot);
      case Op::Bot:
        return 0;
      case Op::Top:
        return all_;
      case Op::Not:
        return all_ & ~eval(n.a);
      case Op::And: {
        WorldSet a = eval(n.a);
        return a == 0 ? 0 : a & eval(n.b);
      }
      case Op::Or: {
        WorldSet a = eval(n.a);
        return a == all_ ? all_ : a | eval(n.b);
      }
      case Op::Implies: {
        WorldSet a = eval(n.a);
        return a == 0 ? all_ : (all_ & ~a) | eval(n.b);
      }
      case Op::Box:
        return modal(succ_, eval(n.a), true);
      case Op::Dia:
        return modal(succ_, eval(n.a), false);
      case Op::BackBox:
        return modal(pred_, eval(n.a), true);
      case Op::BackDia:
        return modal(pred_, eval(n.a), false);
      case Op::L: {
        WorldSet a = eval(n.a);
        return (a & ~eval(n.b)) == 0 ? all_ : 0;
      }
      case Op::ForallProp: {
        WorldSet saved = slot(n.slot);
        WorldSet acc = all_;
        for (WorldSet x = 0;; ++x) {
          slot(n.slot) = x;
          acc &= eval(n.a);
          if (acc == 0 || x == all_) break;
        }
        slot(n.slot) = saved;
        return acc;
      }
      case Op::ExistsProp: {
        WorldSet saved = slot(n.slot);
        WorldSet acc = 0;
        for (WorldSet x = 0;; ++x) {
          slot(n.slot) = x;
          acc |= eval(n.a);
          if (acc == all_ || x == all_) break;
        }
        slot(n.slot) = saved;
        return acc;
      }
      case Op::ForallNom: {
        WorldSet saved = slot(n.slot);
        WorldSet acc = all_;
        for (std::size_t w = 0; w < n_ && acc != 0; ++w) {
          slot(n.slot) = singleton(w);
          acc &= eval(n.a);
        }
        slot(n.slot) = saved;
        return acc;
      }
      case Op::ExistsNom: {
        WorldSet saved = slot(n.slot);
        WorldSet acc = 0;
        for (std::size_t w = 0; w < n_ && acc != all_; ++w) {
          slot(n.slot) = singleton(w);
          acc |= eval(n.a);
        }
        slot(n.slot) = saved;
        return acc;
      }
    }
    throw InternalFault("complex node evaluated as a formula");
  }

  bool holds(int idx) {
    const auto& n = p_.nodes[static_cast<std::size_t>(idx)];
    switch (static_cast<CKind>(n.op - kComplexBase)) {
      case CKind::Ineq: {
        WorldSet a = eval(n.a);
        return a == 0 || (a & ~eval(n.b)) == 0;
      }
      case CKind::Conj:
        return std::all_of(n.items.begin(), n.items.end(), [this](int k) { return holds(k); });
      case CKind::Implies:
        return !holds(n.a) || holds(n.b);
      case CKind::ForallProp:
      case CKind::ExistsProp: {
        bool universal = static_cast<CKind>(n.op - kComplexBase) == CKind::ForallProp;
        WorldSet saved = slot(n.slot);
        bool result = universal;
        for (WorldSet x = 0;; ++x) {
          slot(n.slot) = x;
          if (holds(n.a) != universal) {
            result = !universal;
            break;
          }
          if (x == all_) break;
        }
        slot(n.slot) = saved;
        return result;
      }
      case CKind::ForallNom:
      case CKind::ExistsNom: {
        bool universal = static_cast<CKind>(n.op - kComplexBase) == CKind::ForallNom;
        WorldSet saved = slot(n.slot);
        bool result = universal;
        for (std::size_t w = 0; w < n_; ++w) {
          slot(n.slot) = singleton(w);
          if (holds(n.a) != universal) {
            result = !universal;
            break;
          }
        }
        slot(n.slot) = saved;
        return result;
      }
    }
    throw InternalFault("formula node evaluated as a complex inequality");
  }

  // Calls visit once per assignment of the free slots; stops when visit returns false.
  template <typename Visit>
  bool for_each_assignment(Visit&& visit) {
    std::vector<int> props;
    std::vector<int> noms;
    for (const auto& fp : p_.free_props) props.push_back(fp.second);
    for (const auto& fn : p_.free_noms) noms.push_back(fn.second);
    for (int s : props) slot(s) = 0;
    for (int s : noms) slot(s) = singleton(0);
    while (true) {
      if (!visit()) return false;
      // Odometer step: props count through subsets, nominals through worlds.
      std::size_t k = 0;
      for (; k < props.size(); ++k) {
        WorldSet& v = slot(props[k]);
        if (v != all_) {
          ++v;
          break;
        }
        v = 0;
      }
      if (k < props.size()) continue;
      std::size_t j = 0;
      for (; j < noms.size(); ++j) {
        WorldSet& v = slot(noms[j]);
        if (v != singleton(n_ - 1)) {
          v <<= 1;
          break;
        }
        v = singleton(0);
      }
      if (j == noms.size()) return true;
    }
  }

  void load(const Valuation& v) {
    for (const auto& [name, s] : p_.free_props) {
      auto it = v.props.find(name);
      if (it == v.props.end()) throw UnassignedSymbol(name);
      slot(s) = it->second;
    }
    for (const auto& [name, s] : p_.free_noms) {
      auto it = v.noms.find(name);
      if (it == v.noms.end()) throw UnassignedSymbol("@" + name);
      slot(s) = singleton(it->second);
    }
  }

  WorldSet all() const { return all_; }

 private:
  WorldSet modal(const WorldSet* rel, WorldSet a, bool universal) const {
    WorldSet out = 0;
    for (std::size_t w = 0; w < n_; ++w) {
      bool in = universal ? (rel[w] & ~a) == 0 : (rel[w] & a) != 0;
      if (in) out |= singleton(w);
    }
    return out;
  }

  const Program& p_;
  WorldSet all_;
  std::size_t n_;
  std::vector<WorldSet> slots_;
  WorldSet succ_[kMaxWorlds] = {};
  WorldSet pred_[kMaxWorlds] = {};
};

}  // namespace

WorldSet extension(const KripkeModel& m, const Formula& f) {
  Program p;
  int root = Compiler(p).formula(f);
  Machine machine(p, m.frame());
  machine.load(m.valuation());
  return machine.eval(root);
}

bool eval_at(const KripkeModel& m, std::size_t w, const Formula& f) {
  if (w >= m.frame().size()) throw InputError("world index out of range");
  return contains(extension(m, f), w);
}

bool holds_ineq(const KripkeModel& m, const Inequality& i) {
  return holds_comp(m, Complex::ineq(i));
}

bool holds_comp(const KripkeModel& m, const Complex& c) {
  Program p;
  int root = Compiler(p).complex(c);
  Machine machine(p, m.frame());
  machine.load(m.valuation());
  return machine.holds(root);
}

bool frame_valid(const KripkeFrame& f, const Formula& phi) {
  Program p;
  int root = Compiler(p).formula(phi);
  Machine machine(p, f);
  return machine.for_each_assignment([&] { return machine.eval(root) == machine.all(); });
}

bool frame_valid(const KripkeFrame& f, const Complex& c) {
  Program p;
  int root = Compiler(p).complex(c);
  Machine machine(p, f);
  return machine.for_each_assignment([&] { return machine.holds(root); });
}

void for_each_frame(std::size_t max_size, const std::function<bool(const KripkeFrame&)>& visit) {
  for (std::size_t n = 1; n <= max_size; ++n) {
    if (n * n >= 64) throw InputError("frame enumeration is limited to 7 worlds");
    const std::uint64_t relations = std::uint64_t{1} << (n * n);
    const WorldSet row = singleton(n) - 1;
    for (std::uint64_t r = 0; r < relations; ++r) {
      std::vector<WorldSet> succ(n);
      for (std::size_t w = 0; w < n; ++w) succ[w] = (r >> (w * n)) & row;
      if (!visit(KripkeFrame::from_successors(succ))) return;
    }
  }
}

std::vector<KripkeFrame> enumerate_frames(std::size_t max_size) {
  std::vector<KripkeFrame> out;
  for_each_frame(max_size, [&](const KripkeFrame& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::size_t frame_count(std::size_t max_size) {
  std::size_t total = 0;
  for (std::size_t n = 1; n <= max_size; ++n) total += std::size_t{1} << (n * n);
  return total;
}

}  // namespace sopml
