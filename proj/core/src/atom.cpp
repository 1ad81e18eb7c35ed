#include "aptmine/atom.hpp"

#include <algorithm>
#include <stdexcept>

namespace aptmine {

std::string_view to_string(Category category) {
  switch (category) {
    case Category::Financial:
      return "financial";
    case Category::Software:
      return "software";
    case Category::General:
      return "general";
  }
  return "general";
}

std::optional<Category> category_from_string(std::string_view name) {
  if (name == "financial") return Category::Financial;
  if (name == "software") return Category::Software;
  if (name == "general") return Category::General;
  return std::nullopt;
}

Atom Atom::mentioned(std::string tag, Category category, int threshold) {
  if (threshold < 0) {
    throw std::invalid_argument("atom threshold must be non-negative");
  }
  return Atom(AtomKind::Condition, std::move(tag), category, threshold);
}

Atom Atom::attacked(std::string target) {
  return Atom(AtomKind::Action, std::move(target), Category::General, 0);
}

Category Atom::category() const {
  if (!is_condition()) {
    throw std::logic_error("category() called on an action atom");
  }
  return category_;
}

int Atom::threshold() const {
  if (!is_condition()) {
    throw std::logic_error("threshold() called on an action atom");
  }
  return threshold_;
}

std::string Atom::to_string() const {
  if (is_condition()) {
    std::string s = "Mentioned(";
    s += name_;
    s += ", ";
    s += aptmine::to_string(category_);
    s += ", ";
    s += std::to_string(threshold_);
    s += ")";
    return s;
  }
  return "Attacked(" + name_ + ")";
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (auto c = static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
      c != 0) {
    return c;
  }
  if (auto c = a.name_ <=> b.name_; c != 0) return c;
  if (auto c = static_cast<int>(a.category_) <=> static_cast<int>(b.category_);
      c != 0) {
    return c;
  }
  return a.threshold_ <=> b.threshold_;
}

namespace {

void sort_unique(std::vector<Atom>& atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
}

}  // namespace

World::World(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  sort_unique(atoms_);
}

void World::insert(Atom atom) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
  if (it == atoms_.end() || *it != atom) {
    atoms_.insert(it, std::move(atom));
  }
}

bool World::contains(const Atom& atom) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), atom);
}

Formula::Formula(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw std::invalid_argument("formula must contain at least one atom");
  }
  sort_unique(atoms_);
}

Formula Formula::single(Atom atom) {
  return Formula(std::vector<Atom>{std::move(atom)});
}

bool Formula::condition_only() const {
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [](const Atom& a) { return a.is_condition(); });
}

bool Formula::is_single_action() const {
  return atoms_.size() == 1 && atoms_.front().is_action();
}

bool Formula::contains(const Atom& atom) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), atom);
}

std::string Formula::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i > 0) s += " AND ";
    s += atoms_[i].to_string();
  }
  return s;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  return std::lexicographical_compare_three_way(
      a.atoms_.begin(), a.atoms_.end(), b.atoms_.begin(), b.atoms_.end());
}

}  // namespace aptmine
