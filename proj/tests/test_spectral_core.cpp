#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gaugewave/error.hpp"
#include "gaugewave/identities.hpp"
#include "gaugewave/operators.hpp"
#include "gaugewave/snapshot.hpp"
#include "support.hpp"

using namespace gwtest;

TEST_CASE("grid validation") {
  CHECK_NOTHROW(Grid({2, 8, 1.0}).validate());
  CHECK_THROWS_AS(Grid({2, 9, 1.0}).validate(), PreconditionError);
  CHECK_THROWS_AS(Grid({2, 6, 1.0}).validate(), PreconditionError);
  CHECK_THROWS_AS(Grid({4, 8, 1.0}).validate(), PreconditionError);
  CHECK_THROWS_AS(Grid({3, 8, -1.0}).validate(), PreconditionError);
  const auto& t = modes(grid2(16));
  int zeros = 0;
  for (const auto& k : t.k) zeros += k[0] == 0 && k[1] == 0 && k[2] == 0;
  CHECK(zeros == 1);
}

TEST_CASE("partial derivative") {
  const Grid g = grid2(16, 3.0);
  const double k0 = g.fundamental();
  // d/dx sin(k0 x) = k0 cos(k0 x)
  auto d = partial(sine(g, {1, 0, 0}), 0);
  CHECK(std::abs(d.mode({1, 0, 0}) - cplx(0.5 * k0, 0.0)) < 1e-15);
  CHECK(std::abs(d.mode({-1, 0, 0}) - cplx(0.5 * k0, 0.0)) < 1e-15);
  CHECK(d.is_real());
  CHECK(l2_norm(partial(single_mode(g, {0, 0, 0}, 3.0), 1)) == 0.0);
  CHECK_THROWS_AS(partial(d, 2), PreconditionError);
  CHECK_THROWS_AS(partial(d, -1), PreconditionError);
}

TEST_CASE("partial derivative against fourth-order finite differences") {
  // the same band-limited field on two sample spacings: error falls as h^4
  double err[2];
  for (int r = 0; r < 2; ++r) {
    const Grid g = grid2(r == 0 ? 32 : 64);
    const auto f = rfield(g, 5, 2.0);
    auto fd = fd_partial(to_physical(f, Sampling::grid), g, Sampling::grid, 1);
    err[r] = max_diff(fd, to_physical(partial(f, 1), Sampling::grid));
  }
  CHECK(err[0] / err[1] == doctest::Approx(16.0).epsilon(0.15));
}

TEST_CASE("inverse laplacian") {
  const Grid g = grid3(8, 5.0);
  const double k0 = g.fundamental();
  auto s = inv_laplacian(sine(g, {0, 1, 0}));
  CHECK(std::abs(s.mode({0, 1, 0}) - cplx(0.0, 0.5 / (k0 * k0))) < 1e-15);
  CHECK(l2_norm(inv_laplacian(single_mode(g, {0, 0, 0}, 2.0))) == 0.0);
  const auto f = cfield(grid3(16), 2);
  auto back = laplacian(inv_laplacian(f));
  auto centred = f;
  centred.set_mode({0, 0, 0}, 0.0);
  CHECK(l2_distance(back, centred) <= 1e-12 * l2_norm(f));
}

TEST_CASE("riesz transform") {
  const Grid g = grid2(16, 7.0);
  // R_1 sin(k0 x) = cos(k0 x)
  auto r = riesz(sine(g, {1, 0, 0}), 0);
  CHECK(std::abs(r.mode({1, 0, 0}) - 0.5) < 1e-15);
  CHECK(r.is_real());
  CHECK(r.hermitian_defect() < 1e-15);
  const auto f = rfield(g, 9);
  SpectralField sum(g, Reality::real);
  for (int i = 0; i < 2; ++i) sum += riesz(riesz(f, i), i);
  auto centred = f;
  centred.set_mode({0, 0, 0}, 0.0);
  CHECK(l2_norm(sum + centred) <= 1e-12 * l2_norm(f));
  CHECK(riesz(f, 1).hermitian_defect() < 1e-13);
}

TEST_CASE("inverse modulus") {
  const Grid g = grid3(8);
  auto f = single_mode(g, {1, 2, 2}, cplx(2.0, 1.0));
  CHECK(std::abs(inv_modulus_d(f).mode({1, 2, 2}) - cplx(2.0, 1.0) / 3.0) < 1e-15);
  CHECK(l2_norm(inv_modulus_d(single_mode(g, {0, 0, 0}, 1.0))) == 0.0);
  const auto r = cfield(grid3(16), 4);
  auto centred = r;
  centred.set_mode({0, 0, 0}, 0.0);
  CHECK(l2_distance(modulus_d(inv_modulus_d(r)), centred) <= 1e-12 * l2_norm(r));
}

TEST_CASE("helmholtz splitting") {
  SUBCASE("pure gradient") {
    const Grid g = grid3(8);
    auto a = gradient(sine(g, {1, 0, 0}));
    auto h = helmholtz(a);
    CHECK(l2_norm(h.df) < 1e-15);
    CHECK(l2_distance(h.cf, a) < 1e-15);
  }
  SUBCASE("2D stream function") {
    const Grid g = grid2();
    auto a = perp_gradient(rfield(g, 3));
    CHECK(l2_norm(helmholtz(a).cf) <= 1e-14 * l2_norm(a));
  }
  for (int dim : {2, 3}) {
    const Grid g = dim == 2 ? grid2(64) : grid3(32);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto a = random_vector(g, seed, 1, SpectrumProfile::default_for(g), 1.0);
      const double n = l2_norm(a);
      auto h = helmholtz(a);
      CHECK(l2_distance(h.df + h.cf, a) <= 1e-12 * n);
      CHECK(std::abs(real_inner(h.df, h.cf)) <= 1e-12 * n * n);
      CHECK(l2_norm(divergence(h.df)) <= 1e-12 * n);
      const double curl = dim == 2 ? l2_norm(curl_2d(h.cf)) : l2_norm(curl_3d(h.cf));
      CHECK(curl <= 1e-12 * n);
      for (const auto& c : h.cf) CHECK(c.mean() == cplx(0.0));
    }
  }
}

TEST_CASE("divergence-free projector") {
  const Grid g = grid3(16);
  auto w = curl_3d(random_vector(g, 1, 1, SpectrumProfile{1.5}, 1.0));
  w[0].set_mode({0, 0, 0}, 0.25);
  CHECK(l2_distance(project_df(w), w) <= 1e-14 * l2_norm(w));
  auto grad = gradient(rfield(g, 2));
  CHECK(l2_norm(project_df(grad)) <= 1e-14 * l2_norm(grad));
  auto x = random_vector(g, 3, 1, SpectrumProfile{1.5}, 1.0);
  auto p = project_df(x);
  CHECK(l2_distance(project_df(p), p) <= 1e-13 * l2_norm(p));
  CHECK(l2_distance(p, helmholtz(x).df) <= 1e-14 * l2_norm(x));
  CHECK_THROWS_AS(project_df(VectorField::zeros(grid2())), PreconditionError);
}

TEST_CASE("null forms") {
  const Grid g = grid3(16);
  const auto u = cfield(g, 1), v = cfield(g, 2);
  CHECK(l2_norm(null_form(u, u, 0, 1)) <= 1e-14 * std::pow(l2_norm(u), 2));
  CHECK(l2_norm(null_form(u, v, 0, 2) + null_form(u, v, 2, 0)) <= 1e-13 * l2_norm(null_form(u, v, 0, 2)));
  CHECK(l2_norm(null_form(u, v, 1, 2) + null_form(v, u, 1, 2)) <= 1e-13 * l2_norm(null_form(u, v, 1, 2)));
  CHECK_THROWS_AS(null_form(u, v, 1, 1), PreconditionError);

  // u = e^{i a.x}, v = e^{i b.x}: Q_ij = -(a_i b_j - a_j b_i) e^{i(a+b).x}
  const Grid h = grid3(8, 3.0);
  const double k0 = h.fundamental();
  const std::array<int, 3> a{1, 0, 0}, b{0, 2, 1};
  auto q = null_form(single_mode(h, a, 1.0), single_mode(h, b, 1.0), 0, 1);
  const cplx expect = -(a[0] * b[1] - a[1] * b[0]) * k0 * k0;
  CHECK(std::abs(q.mode({1, 2, 1}) - expect) < 1e-13);
  CHECK(l2_norm(q) == doctest::Approx(std::abs(expect) * std::sqrt(h.volume())));
}

TEST_CASE("multipliers commute") {
  const Grid g = grid3(16);
  const auto f = cfield(g, 7);
  CHECK(l2_distance(partial(riesz(f, 1), 2), riesz(partial(f, 2), 1)) <= 1e-13 * l2_norm(partial(f, 2)));
  CHECK(l2_distance(inv_laplacian(modulus_d(f)), modulus_d(inv_laplacian(f))) <= 1e-13 * l2_norm(f));
  CHECK(l2_distance(inv_modulus_d(partial(f, 0)), partial(inv_modulus_d(f), 0)) <= 1e-13 * l2_norm(f));
}

TEST_CASE("Parseval normalization") {
  for (const Grid& g : {grid2(32, 3.0), grid3(16, 5.0)}) {
    const auto f = cfield(g, 3);
    const double quad = std::sqrt(integrate([&] {
      RealSamples m;
      for (const auto& z : to_physical(f)) m.push_back(std::norm(z));
      return m;
    }(), g));
    CHECK(rel(l2_norm(f), quad) < 1e-12);
  }
  // a single mode of amplitude a: ||f||^2 = L^dim |a|^2
  const Grid g = grid2(8, 3.0);
  CHECK(l2_norm(single_mode(g, {1, 1, 0}, cplx(0.0, 2.0))) == doctest::Approx(2.0 * 3.0));
}

TEST_CASE("transforms round trip and pair packing") {
  const Grid g = grid3(16);
  const auto a = rfield(g, 1), b = rfield(g, 2);
  auto [pa, pb] = to_physical_pair(a, b);
  CHECK(max_diff(pa, to_physical_real(a)) < 1e-14);
  CHECK(max_diff(pb, to_physical_real(b)) < 1e-14);
  auto [ra, rb] = from_physical_pair(pa, pb, g);
  CHECK(l2_distance(ra, a) <= 1e-14 * l2_norm(a));
  CHECK(l2_distance(rb, b) <= 1e-14 * l2_norm(b));
  const auto c = cfield(g, 3);
  CHECK(l2_distance(from_physical(to_physical(c, Sampling::grid), g, Sampling::grid), c) <= 1e-14 * l2_norm(c));
}

TEST_CASE("real fields keep Hermitian symmetry") {
  const Grid g = grid2();
  const auto f = rfield(g, 8);
  CHECK(f.hermitian_defect() < 1e-13);
  CHECK(multiply(f, rfield(g, 9)).hermitian_defect() < 1e-13);
  CHECK(f.all_finite());
  auto bad = f;
  bad[3] = cplx(std::nan(""), 0.0);
  CHECK_FALSE(bad.all_finite());
}

TEST_CASE("random data are deterministic and resolution independent") {
  const Grid coarse = grid3(16), fine = grid3(32);
  const auto a = cfield(coarse, 21), b = cfield(coarse, 21), c = cfield(fine, 21);
  CHECK(l2_distance(a, b) == 0.0);
  for (const std::array<int, 3> k : {std::array<int, 3>{1, 0, 0}, {2, -3, 1}, {-7, 7, 0}})
    CHECK(a.mode(k) == c.mode(k));
  CHECK(l2_norm(random_field(coarse, Reality::real, 1, 1, SpectrumProfile{1.0}, 0.0)) == 0.0);
}

TEST_CASE("snapshot round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "gaugewave_snap_test";
  std::filesystem::create_directories(dir);
  const Grid g = grid2(16, 3.5);
  const auto f = cfield(g, 4), r = rfield(g, 5);
  write_snapshot(dir / "phi.snap", f, "phi", 0.25);
  write_snapshot(dir / "n.snap", r, "N", 1.0);
  auto s = read_snapshot(dir / "phi.snap");
  CHECK(s.name == "phi");
  CHECK(s.time == 0.25);
  CHECK(s.field.grid() == g);
  CHECK(l2_distance(s.field, f) == 0.0);
  CHECK(read_snapshot(dir / "n.snap").field.is_real());
  {
    std::ofstream bad(dir / "bad.snap");
    bad << "GAUGEWAVE-SNAPSHOT 1\ndim 2\nn 15\nend\n";
  }
  CHECK_THROWS_AS(read_snapshot(dir / "bad.snap"), IoError);
  CHECK_THROWS_AS(read_snapshot(dir / "missing.snap"), IoError);
  {
    std::ifstream in(dir / "phi.snap", std::ios::binary);
    std::string all((std::istreambuf_iterator<char>(in)), {});
    std::ofstream cut(dir / "cut.snap", std::ios::binary);
    cut << all.substr(0, all.size() - 8);
  }
  CHECK_THROWS_AS(read_snapshot(dir / "cut.snap"), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("transport null-form identity") {
  const Grid g = grid3(16);
  const auto phi = cfield(g, 1);
  auto zero = check_transport_null_form(VectorField::zeros(g), phi);
  CHECK(zero.degenerate);
  for (const auto& f : zero.lhs) CHECK(l2_norm(f) == 0.0);
  const auto a = zero_mean(random_df_vector(g, 2, 3, SpectrumProfile{1.5}, 1.0));
  auto konst = check_transport_null_form(a, single_mode(g, {0, 0, 0}, 2.0));
  for (const auto& f : konst.lhs) CHECK(l2_norm(f) < 1e-14);
  for (const auto& f : konst.rhs) CHECK(l2_norm(f) < 1e-14);
  for (const Grid& h : {g, grid2(32)}) {
    auto r = check_transport_null_form(zero_mean(random_df_vector(h, 4, 3, SpectrumProfile{1.5}, 1.0)), cfield(h, 5));
    CHECK(std::abs(r.alpha - 1.0) < 1e-10);
    CHECK(r.residual < 1e-10);
  }
  CHECK_THROWS_AS(check_transport_null_form(random_vector(g, 1, 1, SpectrumProfile{1.5}, 1.0), phi),
                  PreconditionError);
}

TEST_CASE("projected current null-form identity") {
  const Grid g = grid3(16);
  auto real = check_projected_current(rfield(g, 3).as_complex());
  for (const auto& f : real.rhs) CHECK(l2_norm(f) < 1e-14);
  for (const auto& f : real.lhs) CHECK(l2_norm(f) < 1e-14);
  // a plane wave carries a constant current, which the projection keeps and the mean removal drops
  auto plane = check_projected_current(single_mode(g, {1, 2, 0}, 1.0));
  for (const auto& f : plane.lhs) CHECK(l2_norm(f) < 1e-13);
  for (const auto& f : plane.rhs) CHECK(l2_norm(f) < 1e-13);
  auto r = check_projected_current(cfield(g, 6));
  CHECK(std::abs(r.alpha + 1.0) < 1e-10);
  CHECK(r.residual < 1e-10);
  CHECK_THROWS_AS(check_projected_current(cfield(grid2(), 1)), PreconditionError);
}
