#include "ncrec/semigroup.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ncrec {

namespace {

std::int64_t reduce_mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

void check_family(const SemigroupModel& model, const GroupElement& g, const char* op) {
  if (g.family != model.family() || static_cast<int>(g.coords.size()) != model.coord_count())
    throw std::invalid_argument(std::string(op) + ": element does not belong to the model family");
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::lattice: return "lattice";
    case Family::cone: return "cone";
    case Family::cyclic: return "cyclic";
    case Family::heisenberg: return "heisenberg";
  }
  return "?";
}

SemigroupModel::SemigroupModel(Family f, int d, std::int64_t m)
    : family_(f), coord_count_(d), m_(m) {
  auto unit = [&](int axis, std::int64_t v) {
    GroupElement e{family_, std::vector<std::int64_t>(coord_count_, 0)};
    e.coords[axis] = v;
    return e;
  };
  switch (family_) {
    case Family::lattice:
      for (int i = 0; i < d; ++i) {
        generators_.push_back(unit(i, 1));
        generators_.push_back(unit(i, -1));
      }
      break;
    case Family::cone:
    case Family::cyclic:
      for (int i = 0; i < d; ++i) generators_.push_back(unit(i, 1));
      break;
    case Family::heisenberg:
      generators_.push_back(unit(0, 1));  // x
      generators_.push_back(unit(1, 1));  // y
      generators_.push_back(unit(2, 1));  // z (central)
      break;
  }
}

SemigroupModel SemigroupModel::lattice(int d) {
  if (d < 1) throw std::invalid_argument("lattice: d must be positive");
  return SemigroupModel(Family::lattice, d, 0);
}

SemigroupModel SemigroupModel::cone(int d) {
  if (d < 1) throw std::invalid_argument("cone: d must be positive");
  return SemigroupModel(Family::cone, d, 0);
}

SemigroupModel SemigroupModel::cyclic(std::int64_t m, int d) {
  if (m < 1 || d < 1) throw std::invalid_argument("cyclic: m and d must be positive");
  return SemigroupModel(Family::cyclic, d, m);
}

SemigroupModel SemigroupModel::heisenberg() { return SemigroupModel(Family::heisenberg, 3, 0); }

GroupElement SemigroupModel::identity() const {
  return GroupElement{family_, std::vector<std::int64_t>(coord_count_, 0)};
}

GroupElement SemigroupModel::element(std::vector<std::int64_t> coords) const {
  if (static_cast<int>(coords.size()) != coord_count_)
    throw std::invalid_argument("element: wrong coordinate count");
  if (family_ == Family::cyclic)
    for (auto& c : coords) c = reduce_mod(c, m_);
  return GroupElement{family_, std::move(coords)};
}

bool SemigroupModel::contains(const GroupElement& g) const {
  if (g.family != family_ || static_cast<int>(g.coords.size()) != coord_count_) return false;
  if (family_ == Family::cone || family_ == Family::heisenberg)
    for (auto c : g.coords)
      if (c < 0) return false;
  return true;
}

GroupElement compose(const SemigroupModel& model, const GroupElement& g, const GroupElement& h) {
  check_family(model, g, "compose");
  check_family(model, h, "compose");
  std::vector<std::int64_t> c(g.coords.size());
  switch (model.family()) {
    case Family::lattice:
    case Family::cone:
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = g.coords[i] + h.coords[i];
      break;
    case Family::cyclic:
      for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = reduce_mod(g.coords[i] + h.coords[i], model.modulus());
      break;
    case Family::heisenberg:
      // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b'), the law of the
      // upper-triangular integer matrices [[1,a,c],[0,1,b],[0,0,1]].
      c[0] = g.coords[0] + h.coords[0];
      c[1] = g.coords[1] + h.coords[1];
      c[2] = g.coords[2] + h.coords[2] + g.coords[0] * h.coords[1];
      break;
  }
  return GroupElement{model.family(), std::move(c)};
}

GroupElement power(const SemigroupModel& model, const GroupElement& g, std::int64_t n) {
  check_family(model, g, "power");
  if (n < 1) throw std::invalid_argument("power: n must be >= 1");
  GroupElement acc = model.identity();
  GroupElement base = g;
  std::int64_t e = n;
  while (e > 0) {
    if (e & 1) acc = compose(model, acc, base);
    if (e >>= 1) base = compose(model, base, base);
  }
  return acc;
}

std::vector<GroupElement> translate(const SemigroupModel& model,
                                    std::span<const GroupElement> elements,
                                    const GroupElement& h, Side side) {
  check_family(model, h, "translate");
  std::vector<GroupElement> out;
  out.reserve(elements.size());
  for (const auto& g : elements)
    out.push_back(side == Side::right ? compose(model, g, h) : compose(model, h, g));
  std::sort(out.begin(), out.end());
  return out;
}

double folner_defect(const SemigroupModel& model, std::span<const GroupElement> elements,
                     const GroupElement& g) {
  if (elements.empty()) throw std::invalid_argument("folner_defect: empty set");
  std::vector<GroupElement> lambda(elements.begin(), elements.end());
  std::sort(lambda.begin(), lambda.end());
  std::vector<GroupElement> shifted = translate(model, lambda, g, Side::right);
  std::vector<GroupElement> sym;
  std::set_symmetric_difference(lambda.begin(), lambda.end(), shifted.begin(), shifted.end(),
                                std::back_inserter(sym));
  return static_cast<double>(sym.size()) / static_cast<double>(lambda.size());
}

namespace {

// Per-coordinate box sides for the schedule parameter n.
std::vector<std::int64_t> axis_sides(const SemigroupModel& model, std::int64_t n) {
  switch (model.family()) {
    case Family::lattice:
    case Family::cone:
      return std::vector<std::int64_t>(model.coord_count(), n);
    case Family::cyclic:
      return std::vector<std::int64_t>(model.coord_count(), std::min(n, model.modulus()));
    case Family::heisenberg:
      return {n, n, n * n};
  }
  return {};
}

}  // namespace

FolnerNet box_folner_net(const SemigroupModel& model, std::span<const std::int64_t> schedule) {
  if (schedule.empty()) throw std::invalid_argument("box_folner_net: empty schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 1) throw std::invalid_argument("box_folner_net: sizes must be positive");
    if (i > 0 && schedule[i] <= schedule[i - 1])
      throw std::invalid_argument("box_folner_net: schedule must be strictly increasing");
  }
  std::vector<FolnerEntry> entries;
  const auto slots = word_slots(model);
  for (std::int64_t n : schedule) {
    const auto sides = axis_sides(model, n);
    FolnerEntry entry;
    entry.n = n;
    std::int64_t total = 1;
    for (auto s : sides) total *= s;
    entry.elements.reserve(total);
    std::vector<std::int64_t> c(sides.size(), 0);
    for (std::int64_t k = 0; k < total; ++k) {
      entry.elements.push_back(GroupElement{model.family(), c});
      for (int axis = static_cast<int>(sides.size()) - 1; axis >= 0; --axis) {
        if (++c[axis] < sides[axis]) break;
        c[axis] = 0;
      }
    }
    // box exponents per word slot, for factorized averaging
    entry.slot_sides.resize(slots.size(), 1);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const GroupElement& gen = model.generators()[slots[s]];
      if (model.family() == Family::lattice) {
        // negative generators never appear inside the nonnegative box
        bool positive = std::any_of(gen.coords.begin(), gen.coords.end(),
                                    [](std::int64_t v) { return v > 0; });
        if (positive) {
          int axis = 0;
          while (gen.coords[axis] == 0) ++axis;
          entry.slot_sides[s] = sides[axis];
        }
      } else {
        int axis = 0;
        while (gen.coords[axis] == 0) ++axis;
        entry.slot_sides[s] = sides[axis];
      }
    }
    entries.push_back(std::move(entry));
  }
  return FolnerNet(model, std::move(entries));
}

std::vector<int> word_slots(const SemigroupModel& model) {
  switch (model.family()) {
    case Family::cone:
    case Family::cyclic:
    case Family::lattice: {
      std::vector<int> slots(model.generators().size());
      for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = static_cast<int>(i);
      return slots;
    }
    case Family::heisenberg:
      return {1, 0, 2};  // y^b x^a z^c
  }
  return {};
}

std::vector<std::int64_t> word_exponents(const SemigroupModel& model, const GroupElement& g) {
  check_family(model, g, "word_exponents");
  switch (model.family()) {
    case Family::cone:
    case Family::cyclic:
      return g.coords;
    case Family::lattice: {
      std::vector<std::int64_t> exps(2 * model.coord_count(), 0);
      for (int i = 0; i < model.coord_count(); ++i) {
        if (g.coords[i] >= 0)
          exps[2 * i] = g.coords[i];
        else
          exps[2 * i + 1] = -g.coords[i];
      }
      return exps;
    }
    case Family::heisenberg:
      if (!model.contains(g))
        throw std::invalid_argument("word_exponents: element outside the heisenberg semigroup");
      return {g.coords[1], g.coords[0], g.coords[2]};
  }
  return {};
}

std::vector<GroupElement> word_ball(const SemigroupModel& model, int radius) {
  std::set<GroupElement> ball{model.identity()};
  std::set<GroupElement> frontier = ball;
  for (int r = 0; r < radius; ++r) {
    std::set<GroupElement> next;
    for (const auto& g : frontier)
      for (const auto& gen : model.generators()) {
        GroupElement e = compose(model, g, gen);
        if (ball.insert(e).second) next.insert(std::move(e));
      }
    frontier = std::move(next);
  }
  return {ball.begin(), ball.end()};
}

}  // namespace ncrec
