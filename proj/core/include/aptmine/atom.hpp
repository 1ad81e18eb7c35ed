#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aptmine {

enum class Category { Financial, Software, General };

std::string_view to_string(Category category);
std::optional<Category> category_from_string(std::string_view name);

enum class AtomKind { Condition, Action };

// A ground predicate. Condition atoms are Mentioned(tag, category,
// threshold): the tag's daily mention count exceeded its threshold.
// Action atoms are Attacked(target): an incident hit the target that day.
// The two kinds are disjoint; atoms compare by value in the canonical
// order (conditions before actions, then name, category, threshold).
class Atom {
 public:
  static Atom mentioned(std::string tag, Category category, int threshold);
  static Atom attacked(std::string target);

  AtomKind kind() const { return kind_; }
  bool is_condition() const { return kind_ == AtomKind::Condition; }
  bool is_action() const { return kind_ == AtomKind::Action; }

  // Tag for conditions, target for actions.
  const std::string& name() const { return name_; }
  Category category() const;
  int threshold() const;

  // "Mentioned(Coinbase, financial, 10)" / "Attacked(Bitcoin)"
  std::string to_string() const;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.kind_ == b.kind_ && a.name_ == b.name_ &&
           a.category_ == b.category_ && a.threshold_ == b.threshold_;
  }
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);

 private:
  Atom(AtomKind kind, std::string name, Category category, int threshold)
      : kind_(kind),
        name_(std::move(name)),
        category_(category),
        threshold_(threshold) {}

  AtomKind kind_;
  std::string name_;
  Category category_ = Category::General;  // conditions only
  int threshold_ = 0;                      // conditions only
};

// The set of atoms true at one time point. Set semantics, kept sorted
// in canonical atom order; may be empty.
class World {
 public:
  World() = default;
  explicit World(std::vector<Atom> atoms);

  void insert(Atom atom);
  bool contains(const Atom& atom) const;

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  friend bool operator==(const World&, const World&) = default;

 private:
  std::vector<Atom> atoms_;  // sorted, unique
};

// A non-empty conjunction of atoms, kept sorted in canonical order.
class Formula {
 public:
  explicit Formula(std::vector<Atom> atoms);
  static Formula single(Atom atom);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  bool condition_only() const;
  bool is_single_action() const;
  bool contains(const Atom& atom) const;

  // Atoms joined with " AND ".
  std::string to_string() const;

  friend bool operator==(const Formula&, const Formula&) = default;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  std::vector<Atom> atoms_;  // sorted, unique, non-empty
};

}  // namespace aptmine
