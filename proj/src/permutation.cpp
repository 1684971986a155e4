#include "bolkit/permutation.hpp"

#include <sstream>

namespace bolkit {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::bad_table: return "BadTable";
    case Errc::not_latin_square: return "NotLatinSquare";
    case Errc::no_identity: return "NoIdentity";
    case Errc::multiple_identities: return "MultipleIdentities";
    case Errc::no_inverse: return "NoInverse";
    case Errc::not_a_subloop: return "NotASubloop";
    case Errc::not_normal: return "NotNormal";
    case Errc::not_a_homomorphism: return "NotAHomomorphism";
    case Errc::order_bound_exceeded: return "OrderBoundExceeded";
    case Errc::degree_mismatch: return "DegreeMismatch";
    case Errc::element_not_in_group: return "ElementNotInGroup";
    case Errc::inner_mismatch: return "InnerMismatch";
    case Errc::ill_conditioned: return "IllConditioned";
    case Errc::not_unimodular: return "NotUnimodular";
    case Errc::numerical_failure: return "NumericalFailure";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

Permutation::Permutation(std::vector<Element> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Element v : images_) {
    if (v >= images_.size() || seen[v])
      throw Error(Errc::invalid_argument, "image array is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Element> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Element>(i);
  return Permutation(unchecked_t{}, std::move(images));
}

Permutation Permutation::from_cycles(
    std::size_t degree, std::initializer_list<std::initializer_list<Element>> cycles) {
  auto images = identity(degree).images_;
  for (const auto& cycle : cycles) {
    if (cycle.size() < 2) continue;
    const Element* first = cycle.begin();
    for (const Element* it = cycle.begin(); it != cycle.end(); ++it) {
      const Element* next = (it + 1 == cycle.end()) ? first : it + 1;
      if (*it >= degree) throw Error(Errc::invalid_argument, "cycle point out of range");
      images[*it] = *next;
    }
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Element Permutation::first_moved_point() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return static_cast<Element>(i);
  return static_cast<Element>(images_.size());
}

Permutation Permutation::inverse() const {
  std::vector<Element> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Element>(i);
  return Permutation(unchecked_t{}, std::move(inv));
}

Permutation operator*(const Permutation& lhs, const Permutation& rhs) {
  if (lhs.degree() != rhs.degree())
    throw Error(Errc::degree_mismatch, "composing permutations of different degree");
  std::vector<Element> out(rhs.degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = lhs.images_[rhs.images_[i]];
  return Permutation(Permutation::unchecked_t{}, std::move(out));
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  std::vector<bool> done(images_.size(), false);
  bool any = false;
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (done[start] || images_[start] == start) continue;
    any = true;
    os << '(';
    std::size_t p = start;
    bool first = true;
    while (!done[p]) {
      done[p] = true;
      if (!first) os << ' ';
      os << p;
      first = false;
      p = images_[p];
    }
    os << ')';
  }
  if (!any) os << "()";
  return os.str();
}

Permutation conjugate(const Permutation& g, const Permutation& p) { return g * p * g.inverse(); }

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  // FNV-1a over the image array.
  std::size_t h = 1469598103934665603ull;
  for (Element v : p.images()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace bolkit
