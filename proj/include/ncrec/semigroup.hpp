#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ncrec {

// Supported discrete groups G with their acting subsemigroup K:
//   lattice     G = K = Z^d
//   cone        G = Z^d, K = N^d
//   cyclic      G = K = (Z/m)^d
//   heisenberg  G = integer Heisenberg group, K = nonnegative octant
enum class Family { lattice, cone, cyclic, heisenberg };

enum class Side { left, right };

std::string family_name(Family f);

struct GroupElement {
  Family family{Family::lattice};
  std::vector<std::int64_t> coords;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

// Group law parameters plus the canonical semigroup generating set of K.
// Counting measure is the Haar measure throughout; every family here is
// unimodular and only heisenberg is non-abelian.
class SemigroupModel {
 public:
  static SemigroupModel lattice(int d);
  static SemigroupModel cone(int d);
  static SemigroupModel cyclic(std::int64_t m, int d);
  static SemigroupModel heisenberg();

  Family family() const { return family_; }
  int coord_count() const { return coord_count_; }
  std::int64_t modulus() const { return m_; }
  bool abelian() const { return family_ != Family::heisenberg; }

  GroupElement identity() const;
  GroupElement element(std::vector<std::int64_t> coords) const;
  const std::vector<GroupElement>& generators() const { return generators_; }

  // Membership in the acting subsemigroup K (the full group except for cone
  // and heisenberg, where coordinates must be nonnegative).
  bool contains(const GroupElement& g) const;

  bool same_model(const SemigroupModel& other) const {
    return family_ == other.family_ && coord_count_ == other.coord_count_ && m_ == other.m_;
  }

 private:
  SemigroupModel(Family f, int d, std::int64_t m);

  Family family_;
  int coord_count_;
  std::int64_t m_;
  std::vector<GroupElement> generators_;
};

GroupElement compose(const SemigroupModel& model, const GroupElement& g, const GroupElement& h);
GroupElement power(const SemigroupModel& model, const GroupElement& g, std::int64_t n);

std::vector<GroupElement> translate(const SemigroupModel& model,
                                    std::span<const GroupElement> elements,
                                    const GroupElement& h, Side side);

// |Lambda symdiff (Lambda g)| / |Lambda| by exact enumeration.
double folner_defect(const SemigroupModel& model, std::span<const GroupElement> elements,
                     const GroupElement& g);

struct FolnerEntry {
  std::int64_t n = 0;                      // schedule parameter
  std::vector<std::int64_t> slot_sides;    // box side per word slot (see word_slots)
  std::vector<GroupElement> elements;      // sorted

  std::int64_t size() const { return static_cast<std::int64_t>(elements.size()); }
};

class FolnerNet {
 public:
  FolnerNet(SemigroupModel model, std::vector<FolnerEntry> entries)
      : model_(std::move(model)), entries_(std::move(entries)) {}

  const SemigroupModel& model() const { return model_; }
  const std::vector<FolnerEntry>& entries() const { return entries_; }

 private:
  SemigroupModel model_;
  std::vector<FolnerEntry> entries_;
};

// Coordinate boxes with side N (cyclic sides capped at m). The heisenberg
// box is [0,N) x [0,N) x [0,N^2): right translation by the (0,1,0) generator
// shifts the central coordinate by a in [0,N), so the central side must grow
// quadratically for the defect to vanish.
FolnerNet box_folner_net(const SemigroupModel& model, std::span<const std::int64_t> schedule);

// Every element of K factors as a product of generator powers in a fixed
// word order; these two functions define that order.  word_slots lists the
// generator index per word position, word_exponents the matching exponents,
// so that g = prod_s generators()[slots[s]] ^ exps[s].  For heisenberg the
// word order is y^b x^a z^c, which reproduces the coordinates (a, b, c)
// exactly with nonnegative exponents.
std::vector<int> word_slots(const SemigroupModel& model);
std::vector<std::int64_t> word_exponents(const SemigroupModel& model, const GroupElement& g);

// All products of at most `radius` generators (including the identity).
std::vector<GroupElement> word_ball(const SemigroupModel& model, int radius);

}  // namespace ncrec
