#include "kimlab/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>

#include "kimlab/errors.hpp"

namespace kimlab {

std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("KIMLAB_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 20'000'000;
}

namespace {

using Key = std::pair<std::vector<ElemId>, int>;  // (F-values, class label)

void collect_vars(const Term& t, std::vector<const Term*>& out) {
  if (t.kind == Term::Kind::Var) out.push_back(&t);
  for (const Term& a : t.args) collect_vars(a, out);
}

void check_declared(const Diagram& d) {
  for (const auto& l : d.literals) {
    std::vector<const Term*> vars;
    collect_vars(l.lhs, vars);
    if (l.atom != Literal::Atom::SortIs) collect_vars(l.rhs, vars);
    for (const Term* v : vars) {
      auto s = d.var_sort(v->var);
      if (!s) throw DomainError("variable '" + v->var + "' is not declared");
      if (*s != v->var_sort) {
        throw DomainError("variable '" + v->var + "' used with the wrong sort");
      }
    }
  }
}

class Search {
 public:
  Search(const FinStructure& base, const Diagram& d, const OracleOptions& opt)
      : base_(base), d_(d), n_(base.arity()) {
    next_id_ = opt.first_fresh.value_or(base.next_free_id());
    if (next_id_ < base.next_free_id()) {
      throw DomainError("first fresh id collides with the base");
    }
    budget_ = opt.node_budget ? opt.node_budget : default_node_budget();
    num_base_classes_ = static_cast<int>(base.num_classes());
    for (std::size_t c = 0; c < base.num_classes(); ++c) {
      members_.push_back(base.class_members_of(c));
      for (ElemId o : base.class_members_of(c)) class_of_[o] = static_cast<int>(c);
    }
  }

  std::optional<Witness> run() {
    if (assign_var(0)) return build_witness();
    return std::nullopt;
  }

 private:
  void tick() {
    if (++nodes_ > budget_) {
      throw SearchLimitError("oracle search exceeded " + std::to_string(budget_) +
                             " nodes (raise KIMLAB_CAP)");
    }
  }

  Sort sort_of(ElemId id) const {
    if (base_.contains(id)) return base_.sort_of(id);
    return fresh_sort_.at(id);
  }

  std::optional<ElemId> value(const Term& t) const {
    switch (t.kind) {
      case Term::Kind::Var: {
        auto it = asg_.find(t.var);
        if (it == asg_.end()) return std::nullopt;
        return it->second;
      }
      case Term::Kind::Const:
        return t.id;
      case Term::Kind::Eval: {
        auto k = key_of(t);
        if (!k) return std::nullopt;
        if (determined(*k)) return base_value(*k);
        auto it = chosen_.find(*k);
        if (it == chosen_.end()) return std::nullopt;
        return it->second;
      }
    }
    return std::nullopt;
  }

  std::optional<int> class_label(const Term& t) const {
    const Term& o = t.kind == Term::Kind::Eval ? t.o_arg() : t;
    auto v = value(o);
    if (!v) return std::nullopt;
    return class_of_.at(*v);
  }

  std::optional<Key> key_of(const Term& t) const {
    Key k;
    for (const Term& f : t.f_args()) {
      auto v = value(f);
      if (!v) return std::nullopt;
      k.first.push_back(*v);
    }
    auto c = class_label(t.o_arg());
    if (!c) return std::nullopt;
    k.second = *c;
    return k;
  }

  bool determined(const Key& k) const {
    if (k.second >= num_base_classes_) return false;
    return std::all_of(k.first.begin(), k.first.end(),
                       [&](ElemId f) { return base_.contains(f); });
  }

  ElemId base_value(const Key& k) const {
    return base_.eval(k.first, members_[static_cast<std::size_t>(k.second)].front());
  }

  // nullopt while the literal still depends on open choices.
  std::optional<bool> truth(const Literal& l) const {
    std::optional<bool> t;
    switch (l.atom) {
      case Literal::Atom::SortIs: {
        auto s = syntactic_sort(l.lhs);
        if (!s) s = base_.sort_of(l.lhs.id);
        t = *s == l.sort;
        break;
      }
      case Literal::Atom::Equiv: {
        auto a = class_label(l.lhs);
        auto b = class_label(l.rhs);
        if (a && b) t = *a == *b;
        break;
      }
      case Literal::Atom::Eq: {
        auto a = value(l.lhs);
        auto b = value(l.rhs);
        if (a && b) {
          t = *a == *b;
        } else if (object_sorted(l.lhs)) {
          auto ca = class_label(l.lhs);
          auto cb = class_label(l.rhs);
          if (ca && cb && *ca != *cb) t = false;
        }
        break;
      }
    }
    if (!t) return std::nullopt;
    return *t == l.positive;
  }

  bool object_sorted(const Term& t) const {
    auto s = syntactic_sort(t);
    return s ? *s == Sort::O : base_.sort_of(t.id) == Sort::O;
  }

  bool consistent() const {
    for (const auto& l : d_.literals) {
      if (auto t = truth(l); t && !*t) return false;
    }
    return true;
  }

  ElemId new_id() {
    const ElemId id = next_id_;
    ++next_id_.value;
    return id;
  }

  void add_fresh(ElemId id, Sort s, int cls) {
    fresh_sort_[id] = s;
    fresh_order_.push_back(id);
    if (s == Sort::O) {
      if (cls == static_cast<int>(members_.size())) members_.emplace_back();
      members_[static_cast<std::size_t>(cls)].push_back(id);
      class_of_[id] = cls;
    }
  }

  void remove_fresh(ElemId id) {
    const Sort s = fresh_sort_.at(id);
    fresh_sort_.erase(id);
    fresh_order_.pop_back();
    if (s == Sort::O) {
      const int cls = class_of_.at(id);
      auto& m = members_[static_cast<std::size_t>(cls)];
      m.pop_back();
      if (m.empty()) members_.pop_back();
      class_of_.erase(id);
    }
    --next_id_.value;
  }

  bool try_assign(const std::string& var, ElemId value, std::size_t next) {
    tick();
    asg_[var] = value;
    if (consistent() && assign_var(next)) return true;
    asg_.erase(var);
    return false;
  }

  bool assign_var(std::size_t i) {
    if (i == d_.vars.size()) return start_keys();
    const auto& v = d_.vars[i];
    const IdSet& pool = v.sort == Sort::O ? base_.objects() : base_.functions();
    for (ElemId e : pool) {
      if (try_assign(v.name, e, i + 1)) return true;
    }
    const std::vector<ElemId> earlier = fresh_order_;
    for (ElemId e : earlier) {
      if (fresh_sort_.at(e) == v.sort && try_assign(v.name, e, i + 1)) return true;
    }
    if (v.sort == Sort::F) {
      const ElemId id = new_id();
      add_fresh(id, Sort::F, -1);
      if (try_assign(v.name, id, i + 1)) return true;
      remove_fresh(id);
      return false;
    }
    const int classes = static_cast<int>(members_.size());
    for (int c = 0; c <= classes; ++c) {
      const ElemId id = new_id();
      add_fresh(id, Sort::O, c);
      if (try_assign(v.name, id, i + 1)) return true;
      remove_fresh(id);
    }
    return false;
  }

  void gather_keys(const Term& t) {
    for (const Term& a : t.args) gather_keys(a);
    if (t.kind != Term::Kind::Eval) return;
    Key k = *key_of(t);
    if (determined(k)) return;
    if (std::find(keys_.begin(), keys_.end(), k) == keys_.end()) keys_.push_back(k);
  }

  bool start_keys() {
    keys_.clear();
    for (const auto& l : d_.literals) {
      gather_keys(l.lhs);
      if (l.atom != Literal::Atom::SortIs) gather_keys(l.rhs);
    }
    return choose_key(0);
  }

  bool try_choose(const Key& k, ElemId value, std::size_t next) {
    tick();
    chosen_[k] = value;
    if (consistent() && choose_key(next)) return true;
    chosen_.erase(k);
    return false;
  }

  bool choose_key(std::size_t j) {
    if (j == keys_.size()) return consistent();
    const Key& k = keys_[j];
    const std::vector<ElemId> candidates = members_[static_cast<std::size_t>(k.second)];
    for (ElemId e : candidates) {
      if (try_choose(k, e, j + 1)) return true;
    }
    const ElemId id = new_id();
    add_fresh(id, Sort::O, k.second);
    if (try_choose(k, id, j + 1)) return true;
    remove_fresh(id);
    return false;
  }

  Witness build_witness() const {
    StructureBuilder b(base_);
    for (ElemId id : fresh_order_) {
      const Sort s = fresh_sort_.at(id);
      b.add(id, s);
      if (s == Sort::O) {
        b.unite(id, members_[static_cast<std::size_t>(class_of_.at(id))].front());
      }
    }
    for (const auto& [k, v] : chosen_) {
      b.set_eval_class(k.first, members_[static_cast<std::size_t>(k.second)].front(), v);
    }
    Witness w{b.build(), asg_};
    const std::uint64_t k = base_.size() + d_.vars.size();
    if (w.extension.size() > generation_bound(k, n_)) {
      throw ConstructionError("oracle witness exceeds the generation bound");
    }
    return w;
  }

  const FinStructure& base_;
  const Diagram& d_;
  int n_;
  ElemId next_id_;
  std::uint64_t budget_ = 0;
  std::uint64_t nodes_ = 0;
  int num_base_classes_ = 0;
  std::vector<IdSet> members_;  // per class label; base members first
  std::map<ElemId, int> class_of_;
  std::map<ElemId, Sort> fresh_sort_;
  std::vector<ElemId> fresh_order_;
  std::map<std::string, ElemId> asg_;
  std::vector<Key> keys_;
  std::map<Key, ElemId> chosen_;
};

}  // namespace

std::optional<Witness> satisfiable(const FinStructure& base, const Diagram& d,
                                   const OracleOptions& options) {
  if (const Report v = validate(base); !v.pass()) {
    throw PreconditionError("base is not a model of T_n: " + v.first_failure()->witness);
  }
  for (const auto& l : d.literals) check_sorts(l, &base, base.arity());
  const Diagram nd = normalize(d);
  check_declared(nd);
  for (const auto& l : nd.literals) check_sorts(l, &base, base.arity());
  auto w = Search(base, nd, options).run();
  if (w && !check_witness(base, d, *w).pass()) {
    throw ConstructionError("oracle produced a witness that does not re-verify");
  }
  return w;
}

Report check_witness(const FinStructure& base, const Diagram& d,
                     const Witness& w) {
  Report r;
  r.subject = "oracle witness";
  const Report v = validate(w.extension);
  r.add("extension is a model of T_n", v.pass(),
        v.pass() ? "" : v.first_failure()->witness);
  bool sub = true;
  std::string why;
  try {
    sub = restrict_to(w.extension, base.elements()) == base;
    if (!sub) why = "restriction to the base differs from the base";
  } catch (const Error& e) {
    sub = false;
    why = e.what();
  }
  r.add("base is a substructure of the extension", sub, why);
  for (const auto& v : d.vars) {
    const bool ok = w.assignment.count(v.name) != 0 &&
                    w.extension.contains(w.assignment.at(v.name)) &&
                    w.extension.sort_of(w.assignment.at(v.name)) == v.sort;
    r.add("assignment of " + v.name, ok);
  }
  if (r.pass()) {
    for (std::size_t i = 0; i < d.literals.size(); ++i) {
      r.add("literal " + std::to_string(i) + " holds",
            holds(w.extension, w.assignment, d.literals[i]));
    }
  }
  return r;
}

namespace {

void check_arity(const Formula& phi, const ParamList& params) {
  for (const auto& t : phi) {
    for (const auto& p : params) {
      if (p.size() != t.params.size()) {
        throw DomainError("template expects " + std::to_string(t.params.size()) +
                          " parameters, got a tuple of length " +
                          std::to_string(p.size()));
      }
    }
  }
}

bool dnf_satisfiable(const FinStructure& base, const Formula& phi,
                     const ParamList& params, std::span<const std::size_t> rows,
                     const OracleOptions& options) {
  if (rows.empty()) return true;
  if (phi.empty()) return false;
  // Instantiations are computed once; branches pick one disjunct per row.
  std::vector<std::vector<Diagram>> inst(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& t : phi) inst[i].push_back(instantiate(t, params[rows[i]]));
  }
  std::vector<std::size_t> choice(rows.size(), 0);
  while (true) {
    Diagram d = inst[0][choice[0]];
    for (std::size_t i = 1; i < rows.size(); ++i) d = conjoin(d, inst[i][choice[i]]);
    if (satisfiable(base, d, options)) return true;
    std::size_t i = rows.size();
    while (i > 0) {
      --i;
      if (++choice[i] < phi.size()) break;
      choice[i] = 0;
      if (i == 0) return false;
    }
  }
}

}  // namespace

bool consistent_set(const FinStructure& base, const Formula& phi,
                    const ParamList& params, const OracleOptions& options) {
  check_arity(phi, params);
  std::vector<std::size_t> rows(params.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return dnf_satisfiable(base, phi, params, rows, options);
}

bool k_inconsistent(const FinStructure& base, const Formula& phi,
                    const ParamList& params, std::size_t k,
                    const OracleOptions& options) {
  if (k < 2) throw DomainError("k-inconsistency needs k >= 2");
  if (k > params.size()) {
    throw DomainError("k = " + std::to_string(k) + " exceeds the " +
                      std::to_string(params.size()) + " parameter tuples");
  }
  check_arity(phi, params);
  // Subsets in lexicographic order of index vectors.
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (dnf_satisfiable(base, phi, params, idx, options)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == params.size() - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::optional<std::size_t> inconsistency_degree(const FinStructure& base,
                                                const Formula& phi,
                                                const ParamList& params,
                                                const OracleOptions& options) {
  for (std::size_t k = 2; k <= params.size(); ++k) {
    if (k_inconsistent(base, phi, params, k, options)) return k;
  }
  return std::nullopt;
}

}  // namespace kimlab
