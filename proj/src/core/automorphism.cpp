#include "automorphism.hpp"

namespace asymwalk {

namespace {

Word substitute(const std::vector<Word>& images, const std::vector<Word>& inverted, const Word& w,
                std::size_t cap) {
  WordBuilder b(w.rank(), cap);
  for (Letter l : w.letters()) {
    if (l > 0) {
      b.append(images[static_cast<std::size_t>(l - 1)]);
    } else {
      b.append(inverted[static_cast<std::size_t>(-l - 1)]);
    }
  }
  return std::move(b).build();
}

std::vector<Word> invert_all(const std::vector<Word>& ws) {
  std::vector<Word> out;
  out.reserve(ws.size());
  for (const auto& w : ws) out.push_back(invert(w));
  return out;
}

}  // namespace

Automorphism Automorphism::create(std::vector<Word> images, std::vector<Word> inverse_images,
                                  std::string name) {
  if (images.size() < 2) fail(ErrorCode::invalid_argument, "automorphism rank must be at least 2");
  if (inverse_images.size() != images.size()) {
    fail(ErrorCode::rank_mismatch, "images and inverse images differ in count");
  }
  const int rank = static_cast<int>(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].rank() != rank || inverse_images[i].rank() != rank) {
      fail(ErrorCode::rank_mismatch, "image rank does not match automorphism rank");
    }
    if (images[i].empty() || inverse_images[i].empty()) {
      fail(ErrorCode::invalid_argument, "automorphism images must be nonempty");
    }
  }

  Automorphism a;
  a.rank_ = rank;
  a.name_ = std::move(name);
  a.images_ = std::move(images);
  a.inverse_images_ = std::move(inverse_images);
  a.inverted_images_ = invert_all(a.images_);

  // Both composites must fix every generator.
  const auto inv_inverted = invert_all(a.inverse_images_);
  for (int g = 1; g <= rank; ++g) {
    const Word x = Word::generator(rank, g);
    const Word there = substitute(a.images_, a.inverted_images_, x, word_length_cap());
    const Word back = substitute(a.inverse_images_, inv_inverted, there, word_length_cap());
    const Word other = substitute(a.images_, a.inverted_images_,
                                  a.inverse_images_[static_cast<std::size_t>(g - 1)],
                                  word_length_cap());
    if (back != x || other != x) {
      fail(ErrorCode::invalid_argument,
           "inverse images do not invert the automorphism at generator " +
               std::string(1, letter_char(g)));
    }
  }
  return a;
}

Automorphism Automorphism::trusted(std::vector<Word> images, std::vector<Word> inverse_images, std::string name) {
  Automorphism a;
  a.rank_ = static_cast<int>(images.size());
  a.name_ = std::move(name);
  a.images_ = std::move(images);
  a.inverse_images_ = std::move(inverse_images);
  a.inverted_images_ = invert_all(a.images_);
  return a;
}

Automorphism Automorphism::parse(int rank, const std::vector<std::string>& images,
                                 const std::vector<std::string>& inverse_images, std::string name) {
  if (static_cast<int>(images.size()) != rank || static_cast<int>(inverse_images.size()) != rank) {
    fail(ErrorCode::rank_mismatch, "expected " + std::to_string(rank) + " images");
  }
  std::vector<Word> im;
  std::vector<Word> inv;
  for (const auto& s : images) im.push_back(Word::parse(rank, s));
  for (const auto& s : inverse_images) inv.push_back(Word::parse(rank, s));
  return create(std::move(im), std::move(inv), std::move(name));
}

Automorphism Automorphism::identity(int rank) {
  std::vector<Word> gens;
  for (int g = 1; g <= rank; ++g) gens.push_back(Word::generator(rank, g));
  return create(gens, gens, "id");
}

Word Automorphism::apply(const Word& w, std::size_t cap) const {
  if (w.rank() != rank_) fail(ErrorCode::rank_mismatch, "word rank does not match automorphism");
  return substitute(images_, inverted_images_, w, cap);
}

Word Automorphism::apply_cyclic(const Word& w, std::size_t cap) const {
  return cyclic_reduce(apply(w, cap)).core;
}

Automorphism Automorphism::inverse() const {
  Automorphism a;
  a.rank_ = rank_;
  a.name_ = name_.empty() ? std::string{} : name_ + "^-1";
  a.images_ = inverse_images_;
  a.inverse_images_ = images_;
  a.inverted_images_ = invert_all(a.images_);
  return a;
}

bool Automorphism::is_identity() const {
  for (int g = 1; g <= rank_; ++g) {
    if (images_[static_cast<std::size_t>(g - 1)] != Word::generator(rank_, g)) return false;
  }
  return true;
}

Automorphism compose(const Automorphism& phi, const Automorphism& psi) {
  if (phi.rank() != psi.rank()) fail(ErrorCode::rank_mismatch, "cannot compose automorphisms of different rank");
  std::vector<Word> images;
  std::vector<Word> inverse_images;
  // (phi o psi)^-1 = psi^-1 o phi^-1
  const Automorphism psi_inv = psi.inverse();
  for (int g = 1; g <= phi.rank(); ++g) {
    images.push_back(phi.apply(psi.images()[static_cast<std::size_t>(g - 1)]));
    inverse_images.push_back(psi_inv.apply(phi.inverse_images()[static_cast<std::size_t>(g - 1)]));
  }
  std::string name;
  if (!phi.name().empty() && !psi.name().empty()) name = phi.name() + "*" + psi.name();
  return Automorphism::trusted(std::move(images), std::move(inverse_images), std::move(name));
}

}  // namespace asymwalk
