#include <catch2/catch_amalgamated.hpp>

#include "elemconj/errors.hpp"
#include "elemconj/ortho_decomp.hpp"

#include "common.hpp"

using namespace elemconj;
using testutil::ortho_ctx;
using testutil::signed_indices;
using testutil::zm;
using testutil::zm_symplectic;

namespace {

const GuardPolicy kGuards{true};

void check_word(const FormRingContext& ctx, const ConjWord& w,
                std::size_t count, const Mat& target) {
  CHECK(w.count() == count);
  CHECK(w.finalized);
  CHECK(w.claimed_target == target);
  CHECK(verify_word(ctx, w));
}

RingElem entry(const FormRingContext& ctx, const Mat& m, int i, int j) {
  return m.at(ctx.pos(i), ctx.pos(j));
}

}  // namespace

TEST_CASE("reference entry chain") {
  FormRingContext ctx = ortho_ctx(zm(5), 3);
  Prng rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat sigma = ctx.random_member(12, rng);
    ConjWord w = o_entry_word_23(ctx, sigma, kGuards);
    check_word(ctx, w, 8, ctx.t_mat(3, 2, entry(ctx, sigma, 2, 3)));
  }
}

TEST_CASE("entry words over every admissible index tuple") {
  FormRingContext ctx = ortho_ctx(zm(4), 3);
  Prng rng(67);
  const Mat sigma = ctx.random_member(14, rng);
  const auto idx = signed_indices(3);
  for (int i : idx)
    for (int j : idx) {
      if (j == i || j == -i) continue;
      for (int k : idx)
        for (int l : idx) {
          if (l == k || l == -k) continue;
          ConjWord w = o_entry_word(ctx, sigma, i, j, k, l, kGuards);
          check_word(ctx, w, 8, ctx.t_mat(k, l, entry(ctx, sigma, i, j)));
        }
    }
}

TEST_CASE("antidiagonal words carry the correction marker") {
  FormRingContext ctx = ortho_ctx(zm(5), 3);
  Prng rng(71);
  for (int trial = 0; trial < 3; ++trial) {
    const Mat sigma = ctx.random_member(12, rng);
    for (int i : signed_indices(3)) {
      ConjWord w = o_antidiag_word(ctx, sigma, i, 1, -2, kGuards);
      check_word(ctx, w, 16, ctx.t_mat(1, -2, entry(ctx, sigma, i, -i)));
      CHECK(w.extras.corrected_factor);
    }
  }
}

TEST_CASE("diagonal difference words on signed indices") {
  FormRingContext ctx = ortho_ctx(zm(5), 3);
  const Ring& R = *ctx.ring();
  Prng rng(73);
  const Mat sigma = ctx.random_member(14, rng);
  for (int i : signed_indices(3))
    for (int j : signed_indices(3)) {
      if (j == i || j == -i) continue;
      ConjWord w = o_diag_diff_word(ctx, sigma, i, j, 2, 3, kGuards);
      const RingElem diff =
          R.sub(entry(ctx, sigma, i, i), entry(ctx, sigma, j, j));
      check_word(ctx, w, 24, ctx.t_mat(2, 3, diff));
    }
}

TEST_CASE("opposite diagonal words") {
  FormRingContext ctx = ortho_ctx(zm(4), 3);
  const Ring& R = *ctx.ring();
  Prng rng(79);
  const Mat sigma = ctx.random_member(14, rng);
  for (int i : signed_indices(3)) {
    ConjWord w = o_opposite_diag_word(ctx, sigma, i, 3, 1, kGuards);
    const RingElem diff =
        R.sub(entry(ctx, sigma, i, i), entry(ctx, sigma, -i, -i));
    check_word(ctx, w, 48, ctx.t_mat(3, 1, diff));
  }
}

TEST_CASE("scaled variants double the counts") {
  FormRingContext ctx = ortho_ctx(zm(5), 4);
  const Ring& R = *ctx.ring();
  Prng rng(83);
  for (int trial = 0; trial < 3; ++trial) {
    const Mat sigma = ctx.random_member(16, rng);
    const RingElem x = R.random_elem(rng);

    ConjWord we = o_multiple_entry_word(ctx, sigma, x, 1, -3, 2, 4, kGuards);
    check_word(ctx, we, 16,
               ctx.t_mat(2, 4, R.mul(x, entry(ctx, sigma, 1, -3))));

    ConjWord wa = o_multiple_antidiag_word(ctx, sigma, x, -2, 1, 3, kGuards);
    check_word(ctx, wa, 32,
               ctx.t_mat(1, 3, R.mul(x, entry(ctx, sigma, -2, 2))));
    CHECK(wa.extras.corrected_factor);

    ConjWord wd = o_multiple_diag_diff_word(ctx, sigma, x, 2, -4, 1, -3, kGuards);
    const RingElem diff =
        R.sub(entry(ctx, sigma, 2, 2), entry(ctx, sigma, -4, -4));
    check_word(ctx, wd, 48, ctx.t_mat(1, -3, R.mul(x, diff)));
  }
}

TEST_CASE("larger rank") {
  FormRingContext ctx = ortho_ctx(zm(4), 5);
  Prng rng(89);
  const Mat sigma = ctx.random_member(20, rng);
  ConjWord w = o_entry_word(ctx, sigma, 4, -5, -1, 3, kGuards);
  check_word(ctx, w, 8, ctx.t_mat(-1, 3, entry(ctx, sigma, 4, -5)));
  ConjWord a = o_antidiag_word(ctx, sigma, 5, 2, -4, kGuards);
  check_word(ctx, a, 16, ctx.t_mat(2, -4, entry(ctx, sigma, 5, -5)));
}

TEST_CASE("rejects wrong contexts and bad indices") {
  FormRingContext sympl = testutil::unitary_ctx(zm_symplectic(5), 3);
  Prng rng(97);
  const Mat sigma = sympl.random_member(10, rng);
  CHECK_THROWS_AS(o_entry_word(sympl, sigma, 1, 2, 2, 3, kGuards), Error);

  FormRingContext ctx = ortho_ctx(zm(5), 3);
  const Mat ok = ctx.random_member(10, rng);
  CHECK_THROWS_AS(o_entry_word(ctx, ok, 1, -1, 2, 3, kGuards), Error);
  CHECK_THROWS_AS(o_entry_word(ctx, ok, 1, 2, 3, 3, kGuards), Error);
  CHECK_THROWS_AS(o_antidiag_word(ctx, ok, 1, 2, -2, kGuards), Error);
  // Non-members are rejected up front.
  CHECK_THROWS_AS(o_entry_word(ctx, Mat(ctx.ring(), 6), 1, 2, 2, 3, kGuards),
                  Error);
}
