#pragma once

#include <string>
#include <vector>

#include "words.hpp"

namespace asymwalk {

// Automorphism of F_k given by the images of the positive generators together
// with caller-supplied images of its inverse. The inverse is verified at
// construction; general inversion is deliberately not attempted.
class Automorphism {
 public:
  static Automorphism create(std::vector<Word> images, std::vector<Word> inverse_images,
                             std::string name = {});
  static Automorphism parse(int rank, const std::vector<std::string>& images,
                            const std::vector<std::string>& inverse_images, std::string name = {});
  static Automorphism identity(int rank);

  int rank() const noexcept { return rank_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Word>& images() const noexcept { return images_; }
  const std::vector<Word>& inverse_images() const noexcept { return inverse_images_; }

  Word apply(const Word& w, std::size_t cap = word_length_cap()) const;
  // Image of a conjugacy class: apply, then cyclically reduce.
  Word apply_cyclic(const Word& w, std::size_t cap = word_length_cap()) const;

  Automorphism inverse() const;
  bool is_identity() const;

 private:
  Automorphism() = default;
  // Composites of verified automorphisms are invertible by construction.
  static Automorphism trusted(std::vector<Word> images, std::vector<Word> inverse_images, std::string name);
  friend Automorphism compose(const Automorphism& phi, const Automorphism& psi);

  int rank_ = 0;
  std::string name_;
  std::vector<Word> images_;
  std::vector<Word> inverse_images_;
  std::vector<Word> inverted_images_;  // images_[i]^-1, cached for substitution
};

// Returns phi o psi, i.e. apply(compose(phi, psi), w) == phi(psi(w)).
Automorphism compose(const Automorphism& phi, const Automorphism& psi);

}  // namespace asymwalk
