#include "dcicheck/permutation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dcicheck/error.hpp"

namespace dcicheck {
namespace {

Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(std::move(images));
}

// Evaluates a cycle string point by point, independently of the parser.
std::vector<Point> images_from_text(const std::string& text, std::size_t n) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<int> cycle;
  int value = -1;
  for (char ch : text) {
    if (ch >= '0' && ch <= '9') {
      value = (value < 0 ? 0 : value * 10) + (ch - '0');
    } else {
      if (value >= 0) cycle.push_back(value - 1);
      value = -1;
      if (ch == ')') {
        for (std::size_t i = 0; i < cycle.size(); ++i) img[cycle[i]] = cycle[(i + 1) % cycle.size()];
        cycle.clear();
      }
    }
  }
  return img;
}

TEST(Permutation, ParseIdentity) {
  auto e = Permutation::parse("()", 6);
  EXPECT_TRUE(e.is_identity());
  EXPECT_EQ(e.degree(), 6u);
  EXPECT_TRUE(Permutation::parse("", 4).is_identity());
  EXPECT_EQ(e.to_string(), "()");
}

TEST(Permutation, ParseBlockActions) {
  auto r3 = Permutation::parse("(1,4)(2,6)(3,5)", 6);
  EXPECT_EQ(std::vector<Point>(r3.images().begin(), r3.images().end()), images_from_text("(1,4)(2,6)(3,5)", 6));
  EXPECT_EQ(r3.to_string(), "(1,4)(2,6)(3,5)");
  auto r2 = Permutation::parse(" (1, 2,3) (4,5,6)", 6);
  EXPECT_EQ(r2.to_string(), "(1,2,3)(4,5,6)");
  EXPECT_EQ(r2.order(), 3u);
}

TEST(Permutation, ParseErrors) {
  EXPECT_THROW(Permutation::parse("(1,2", 4), InputError);
  EXPECT_THROW(Permutation::parse("(1,2)(2,3)", 4), InputError);
  EXPECT_THROW(Permutation::parse("(1,5)", 4), InputError);
  EXPECT_THROW(Permutation::parse("(0,1)", 4), InputError);
  EXPECT_THROW(Permutation::parse("1,2", 4), InputError);
  EXPECT_THROW(Permutation::parse("(1,,2)", 4), InputError);
  EXPECT_THROW(Permutation(std::vector<Point>{0, 0, 1}), InputError);
}

TEST(Permutation, RoundTrip) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    auto x = random_permutation(20, rng);
    EXPECT_EQ(Permutation::parse(x.to_string(), 20), x);
  }
}

TEST(Permutation, Compose) {
  auto s = Permutation::parse("(1,2)", 3);
  auto t = Permutation::parse("(2,3)", 3);
  EXPECT_EQ(compose(s, t), Permutation::parse("(1,3,2)", 3));
  EXPECT_EQ(compose(s, Permutation(3)), s);
  auto r2 = Permutation::parse("(1,2,3)(4,5,6)", 6);
  EXPECT_TRUE(compose(compose(r2, r2), r2).is_identity());
  EXPECT_THROW(compose(s, Permutation(4)), InputError);
}

TEST(Permutation, ComposeIsAssociative) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    auto a = random_permutation(30, rng), b = random_permutation(30, rng), c = random_permutation(30, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(Permutation, Conjugate) {
  auto x = Permutation::parse("(1,2,3)", 3);
  EXPECT_EQ(conjugate(x, Permutation(3)), x);
  EXPECT_EQ(conjugate(x, Permutation::parse("(1,2)", 3)), Permutation::parse("(2,1,3)", 3));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    auto y = random_permutation(12, rng), pi = random_permutation(12, rng);
    auto c = conjugate(y, pi);
    EXPECT_EQ(c.cycle_type(), y.cycle_type());
    EXPECT_EQ(c, pi.inverse() * y * pi);
  }
}

TEST(Permutation, PowAndOrder) {
  auto x = Permutation::parse("(1,2,3,4)(5,6)", 7);
  EXPECT_EQ(x.order(), 4u);
  EXPECT_TRUE(x.pow(4).is_identity());
  EXPECT_EQ(x.pow(-1), x.inverse());
  EXPECT_EQ(x.pow(3), x * x * x);
  EXPECT_FALSE(x.is_semiregular());
  EXPECT_TRUE(Permutation::parse("(1,2)(3,4)", 4).is_semiregular());
  EXPECT_EQ(x.first_moved_point(), 0u);
}

}  // namespace
}  // namespace dcicheck
