// SPDX-License-Identifier: Apache-2.0
//
// fddmimo - support-aware downlink training simulator for FDD massive MIMO
// Copyright (C) 2026 The fddmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include "fddmimo/channel.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace fddmimo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

constexpr double pi = std::numbers::pi;

// |sum_l exp(j 2 pi psi l)|, the kernel magnitude by brute force
double kernel_by_sum(double psi, std::size_t M)
{
    std::complex<double> s = 0.0;
    for (std::size_t l = 0; l < M; ++l)
        s += std::polar(1.0, 2.0 * pi * psi * static_cast<double>(l));
    return std::abs(s);
}

// (1/M) * integral of gamma |D_M(psi_i)|^2 by a fine midpoint rule, independent of the library grid
arma::vec variance_by_quadrature(const SystemConfig &cfg, const ScatteringProfile &prof, Band band,
                                 std::size_t points)
{
    const std::size_t M = cfg.antennas;
    arma::vec v(M, arma::fill::zeros);
    const double f = cfg.spacing / cfg.speed * (band == Band::uplink ? cfg.f_ul : cfg.f_dl);
    for (const auto &c : prof.clusters())
    {
        const double h = (c.hi - c.lo) / static_cast<double>(points);
        for (std::size_t g = 0; g < points; ++g)
        {
            const double th = c.lo + (static_cast<double>(g) + 0.5) * h;
            for (std::size_t i = 0; i < M; ++i)
            {
                const double psi = f * std::sin(th) - static_cast<double>(i) / static_cast<double>(M) + 0.5;
                const double d = kernel_by_sum(psi, M);
                v(i) += c.density * h * d * d;
            }
        }
    }
    return v / static_cast<double>(M);
}

SystemConfig small_standard(std::size_t M)
{
    SystemConfig cfg = SystemConfig::standard();
    cfg.antennas = M;
    cfg.set_dl_snr_db(10.0);
    return cfg;
}

} // namespace

TEST_CASE("Channel - array response", "[channel]")
{
    const SystemConfig cfg = SystemConfig::standard();

    const arma::cx_vec a0 = array_response(cfg, 0.0, Band::uplink);
    CHECK(arma::approx_equal(a0, arma::cx_vec(cfg.antennas, arma::fill::ones), "absdiff", 1e-15));

    for (double th : {-1.0, -0.3, 0.2, 0.9})
        for (Band b : {Band::uplink, Band::downlink})
            CHECK(arma::abs(arma::abs(array_response(cfg, th, b)) - 1.0).max() < 1e-14);

    // edge of the range under the edge-matched spacing: entry l = exp(j pi l)
    const arma::cx_vec edge = array_response(cfg, cfg.theta_max, Band::uplink);
    for (std::size_t l = 0; l < cfg.antennas; ++l)
        CHECK(std::abs(edge(l) - std::polar(1.0, pi * static_cast<double>(l))) < 1e-9);

    CHECK_THROWS_AS(array_response(cfg, 1.2, Band::uplink), std::domain_error);
    CHECK_THROWS_AS(array_response(cfg, -1.2, Band::downlink), std::domain_error);
}

TEST_CASE("Channel - DFT matrix", "[channel]")
{
    // zero-based k = l = 0 gives exp(0) = 1
    const arma::cx_mat F1 = dft_matrix(1);
    REQUIRE(F1.n_elem == 1);
    CHECK(std::abs(F1(0, 0) - std::complex<double>(1.0, 0.0)) < 1e-15);

    const arma::cx_mat F8 = dft_matrix(8);
    CHECK(arma::norm(F8.t() * F8 - arma::eye<arma::cx_mat>(8, 8), "fro") < 1e-10);

    const arma::cx_mat F = dft_matrix(128);
    for (arma::uword l = 0; l < 128; ++l)
        CHECK_THAT(arma::norm(F.col(l), 2), WithinAbs(1.0, 1e-12));

    // entry formula against direct evaluation
    const std::size_t M = 16;
    const arma::cx_mat F16 = dft_matrix(M);
    for (std::size_t k = 0; k < M; ++k)
        for (std::size_t l = 0; l < M; ++l)
        {
            const double phase = 2.0 * pi / M * k * (static_cast<double>(l) - M / 2.0);
            CHECK(std::abs(F16(k, l) - std::polar(1.0 / std::sqrt(double(M)), phase)) < 1e-12);
        }
    CHECK_THROWS_AS(dft_matrix(0), std::invalid_argument);
}

TEST_CASE("Channel - Dirichlet kernel", "[channel]")
{
    CHECK_THAT(dirichlet_kernel(0.0, 128), WithinAbs(128.0, 1e-9));
    CHECK_THAT(dirichlet_kernel(1.0 / 128.0, 128), WithinAbs(0.0, 1e-9));
    for (std::size_t M : {7u, 8u, 64u})
        for (double psi : {0.013, 0.25, 0.5, -0.37, 1.0, 2.0, 0.999999999999})
            CHECK_THAT(std::abs(dirichlet_kernel(psi, M)), WithinAbs(kernel_by_sum(psi, M), 1e-7));
}

TEST_CASE("Channel - Fourier coefficients of a steering vector follow the kernel", "[channel]")
{
    const SystemConfig cfg = small_standard(32);
    const arma::cx_mat F = dft_matrix(cfg.antennas);
    for (double th : {-0.8, 0.1, 0.77})
        for (Band b : {Band::uplink, Band::downlink})
        {
            const arma::cx_vec c = F.t() * array_response(cfg, th, b);
            for (std::size_t i = 0; i < cfg.antennas; ++i)
                CHECK_THAT(std::abs(c(i)),
                           WithinAbs(std::abs(dirichlet_kernel(beam_offset(cfg, b, i, th), cfg.antennas)) /
                                         std::sqrt(double(cfg.antennas)),
                                     1e-9));
        }
}

TEST_CASE("Channel - profile normalization and validation", "[channel]")
{
    const double tm = pi / 3.0;
    const ScatteringProfile p({{-0.2, 0.2, 1.0}, {0.0, 0.4, 2.0}}, tm);
    // overlap splits into [-0.2,0) d=1, [0,0.2) d=3, [0.2,0.4) d=2
    REQUIRE(p.clusters().size() == 3);
    CHECK_THAT(p.clusters()[1].density, WithinAbs(3.0, 1e-15));
    CHECK_THAT(p.total_power(), WithinAbs(0.2 + 0.6 + 0.4, 1e-14));
    CHECK_THAT(p.power_in(0.1, 0.3), WithinAbs(0.3 + 0.2, 1e-14));
    CHECK(p.support() == AngleSet{{-0.2, 0.4}});

    const ScatteringProfile u = ScatteringProfile::uniform_clusters({{-0.5, -0.3}, {0.1, 0.2}}, tm);
    CHECK_THAT(u.total_power(), WithinAbs(1.0, 1e-14));

    CHECK_THROWS_AS(ScatteringProfile({{0.0, 0.1, 0.0}}, tm), std::invalid_argument);
    CHECK_THROWS_AS(ScatteringProfile({{0.2, 0.1, 1.0}}, tm), std::invalid_argument);
    CHECK_THROWS_AS(ScatteringProfile({{0.9, 1.1, 1.0}}, tm), std::invalid_argument);
    CHECK_THROWS_AS(ScatteringProfile({{0.0, 0.1, -1.0}}, tm), std::invalid_argument);

    // a zero-power profile smuggled past the constructor is still refused at use
    const SystemConfig cfg = small_standard(16);
    const ScatteringProfile zero = ScatteringProfile::unchecked({{0.0, 0.1, 0.0}});
    Rng rng = make_stream(1, "zero");
    CHECK_THROWS_AS(sample_channel(cfg, zero, Band::uplink, rng), std::invalid_argument);
    CHECK_THROWS_AS(variance_vector(cfg, zero, Band::uplink), std::invalid_argument);
}

TEST_CASE("Channel - sampled channels are unitary-consistent and finite", "[channel]")
{
    const SystemConfig cfg = small_standard(64);
    const ScatteringProfile prof = ScatteringProfile::uniform_clusters({{0.1, 0.3}}, cfg.theta_max);
    Rng rng = make_stream(3, "unitary");
    for (int t = 0; t < 50; ++t)
    {
        const ChannelRealization h = sample_channel(cfg, prof, Band::downlink, rng);
        REQUIRE(h.spatial.is_finite());
        CHECK_THAT(arma::norm(h.fourier, 2), WithinRel(arma::norm(h.spatial, 2), 1e-9));
        CHECK(h.band == Band::downlink);
    }
}

TEST_CASE("Channel - variance vector against a fine independent quadrature", "[channel]")
{
    const SystemConfig cfg = small_standard(32);
    const ScatteringProfile prof({{-0.7, -0.55, 2.0}, {0.3, 0.42, 1.0}}, cfg.theta_max);
    SystemConfig fine = cfg;
    fine.grid_points = 16 * cfg.antennas;
    for (Band b : {Band::uplink, Band::downlink})
    {
        const arma::vec v = variance_vector(cfg, prof, b);
        const arma::vec v16 = variance_vector(fine, prof, b);
        const arma::vec ref = variance_by_quadrature(cfg, prof, b, 4000);
        for (arma::uword i = 0; i < v.n_elem; ++i)
        {
            // main-lobe bins are within 1% at the default grid; sidelobe bins converge at second order
            if (ref(i) > 0.1 * ref.max())
                CHECK_THAT(v(i), WithinRel(ref(i), 0.01));
            if (ref(i) > 0.01 * ref.max())
            {
                CHECK_THAT(v(i), WithinRel(ref(i), 0.02));
                CHECK_THAT(v16(i), WithinRel(ref(i), 0.005));
            }
        }
        CHECK(v.min() >= 0.0);
    }
}

TEST_CASE("Channel - variance mass equals M times the profile power", "[channel]")
{
    // Full-range profile: the Fourier transform is unitary, so sum_i E|h_i|^2 = E||h||^2 = M int gamma.
    const SystemConfig cfg = small_standard(64);
    const ScatteringProfile full({{-cfg.theta_max, cfg.theta_max, 0.5}}, cfg.theta_max);
    for (Band b : {Band::uplink, Band::downlink})
    {
        const arma::vec v = variance_vector(cfg, full, b);
        CHECK_THAT(arma::accu(v), WithinRel(64.0 * full.total_power(), 0.01));
    }
}

TEST_CASE("Channel - narrow cluster on a beam centre concentrates variance", "[channel]")
{
    const SystemConfig cfg = small_standard(64);
    const std::size_t i = 40;
    // psi_i(theta) = 0  <=>  sin(theta) = (i/M - 1/2) / (d f / c)
    const double s = (static_cast<double>(i) / 64.0 - 0.5) / cfg.spatial_frequency(Band::uplink);
    const double th = std::asin(s);
    const ScatteringProfile narrow = ScatteringProfile::uniform_clusters({{th - 1e-4, th + 1e-4}}, cfg.theta_max);
    const arma::vec v = variance_vector(cfg, narrow, Band::uplink);
    CHECK(v.index_max() == i);
    CHECK(v(i) > 0.95 * arma::accu(v));
}

TEST_CASE("Channel - sampled variance and mean match the analytic profile", "[channel]")
{
    const SystemConfig cfg = small_standard(128);
    const ScatteringProfile prof =
        ScatteringProfile::uniform_clusters({{0.0, 2.0 * cfg.theta_max / 10.0}}, cfg.theta_max);
    const arma::vec v = variance_vector(cfg, prof, Band::uplink);
    const ChannelSampler sampler(cfg, prof, Band::uplink);
    const arma::cx_mat F = dft_matrix(cfg.antennas);

    Rng rng = make_stream(17, "variance");
    const std::size_t draws = 10000;
    const arma::cx_mat H = F.t() * sampler.draw_block(draws, rng);
    const arma::vec emp = arma::sum(arma::square(arma::abs(H)), 1) / static_cast<double>(draws);
    for (arma::uword i = 0; i < v.n_elem; ++i)
        if (v(i) > 0.01 * v.max())
            CHECK_THAT(emp(i), WithinRel(v(i), 0.05));

    const arma::cx_vec mean = arma::mean(H, 1);
    CHECK(arma::norm(mean, 2) < 0.05 * std::sqrt(arma::accu(v)));
}

TEST_CASE("Channel - single-cluster covariance is diagonally dominant", "[channel]")
{
    // measured as squared off-diagonal Frobenius mass relative to the squared diagonal mass
    const SystemConfig cfg = small_standard(64);
    const ScatteringProfile prof = ScatteringProfile::uniform_clusters({{-0.35, -0.35 + 0.2}}, cfg.theta_max);
    const ChannelSampler sampler(cfg, prof, Band::uplink);
    const arma::cx_mat F = dft_matrix(cfg.antennas);
    Rng rng = make_stream(19, "covariance");
    const std::size_t draws = 10000;
    const arma::cx_mat H = F.t() * sampler.draw_block(draws, rng);
    const arma::cx_mat C = H * H.t() / static_cast<double>(draws);
    const double diag = arma::accu(arma::square(arma::abs(C.diag())));
    const double off = arma::accu(arma::square(arma::abs(C))) - diag;
    CHECK(off < 0.10 * diag);

    const arma::cx_mat exact = fourier_covariance(cfg, prof, Band::uplink);
    const double ediag = arma::accu(arma::square(arma::abs(exact.diag())));
    CHECK(arma::accu(arma::square(arma::abs(exact))) - ediag < 0.10 * ediag);
    CHECK(arma::norm(arma::real(exact.diag()) - variance_vector(cfg, prof, Band::uplink), "inf") <
          1e-9 * arma::accu(arma::real(exact.diag())));
}

TEST_CASE("Channel - theoretical support", "[channel]")
{
    const SystemConfig cfg = SystemConfig::standard();

    SECTION("full coverage selects every beam that meets the range")
    {
        const ScatteringProfile full({{-cfg.theta_max, cfg.theta_max, 1.0}}, cfg.theta_max);
        for (Band b : {Band::uplink, Band::downlink})
        {
            std::size_t expected = 0;
            for (std::size_t i = 0; i < cfg.antennas; ++i)
                expected += !beam_interval(cfg, b, i).empty();
            CHECK(theoretical_support(cfg, full, b).size() == expected);
        }
        CHECK(theoretical_support(cfg, full, Band::uplink).size() == cfg.antennas);
    }

    SECTION("one cluster spans a contiguous block sized by its sine extent")
    {
        const double w = 2.0 * cfg.theta_max / 10.0;
        const double M = static_cast<double>(cfg.antennas);
        const double du = cfg.spatial_frequency(Band::uplink);
        for (double lo : {-1.04, -0.9, -0.6, -0.2, 0.0, 0.3, 0.6, 0.83})
        {
            const ScatteringProfile p = ScatteringProfile::uniform_clusters({{lo, lo + w}}, cfg.theta_max);
            const SupportSet s = theoretical_support(cfg, p, Band::uplink);
            // beams whose main lobe (half width 1/M in offset) meets the cluster's sine range
            const double expected = M * du * (std::sin(lo + w) - std::sin(lo)) + 2.0;
            CHECK(std::abs(static_cast<double>(s.size()) - expected) <= 1.0);
            // contiguous modulo M: the block may wrap at the edge of the range
            std::size_t run_ends = 0;
            for (auto i : s.indices())
                run_ends += !s.contains((i + 1) % cfg.antennas);
            CHECK(run_ends == 1);
        }
    }

    SECTION("a cluster near the edge of the range spans about 13 beams")
    {
        // the sine stretch is smallest near the edges; central placements reach 18
        const double w = 2.0 * cfg.theta_max / 10.0;
        for (double lo : {-1.04, -0.95, 0.74, 0.83})
        {
            const ScatteringProfile p = ScatteringProfile::uniform_clusters({{lo, lo + w}}, cfg.theta_max);
            const std::size_t n = theoretical_support(cfg, p, Band::uplink).size();
            CHECK(n >= 11);
            CHECK(n <= 15);
        }
    }

    SECTION("equal carriers make UL and DL supports coincide")
    {
        SystemConfig same = cfg;
        same.f_dl = same.f_ul;
        const ScatteringProfile p = ScatteringProfile::uniform_clusters({{-0.9, -0.7}, {0.2, 0.5}}, cfg.theta_max);
        CHECK(theoretical_support(same, p, Band::uplink).indices() ==
              theoretical_support(same, p, Band::downlink).indices());
    }
}

TEST_CASE("Channel - beam intervals are exact in the offset", "[channel]")
{
    const SystemConfig cfg = SystemConfig::standard();
    for (Band b : {Band::uplink, Band::downlink})
        for (std::size_t i : {0u, 5u, 63u, 64u, 127u})
            for (const auto &iv : beam_interval(cfg, b, i))
                for (double th : {iv.lo, iv.hi})
                {
                    const double psi = beam_offset(cfg, b, i, th);
                    const double wrapped = std::abs(psi - std::round(psi));
                    const bool at_range_edge = std::abs(std::abs(th) - cfg.theta_max) < 1e-12;
                    CHECK((at_range_edge || std::abs(wrapped - 1.0 / 128.0) < 1e-9));
                    CHECK(wrapped <= 1.0 / 128.0 + 1e-9);
                }
}

TEST_CASE("Channel - padded support holds most of the variance", "[channel]")
{
    // Dirichlet side lobes leak a few percent beyond one index of padding; 97 % is the floor
    // seen across cluster placements for this array size.
    const SystemConfig cfg = small_standard(64);
    const double w = 2.0 * cfg.theta_max / 10.0;
    for (double lo : {-0.9, -0.25, 0.0, 0.5})
        for (Band b : {Band::uplink, Band::downlink})
        {
            const ScatteringProfile p = ScatteringProfile::uniform_clusters({{lo, lo + w}}, cfg.theta_max);
            const arma::vec v = variance_vector(cfg, p, b);
            const SupportSet s = theoretical_support(cfg, p, b);
            std::vector<char> in(cfg.antennas, 0);
            for (auto i : s.indices())
                for (int d = -1; d <= 1; ++d)
                    in[(i + cfg.antennas + d) % cfg.antennas] = 1;
            double kept = 0.0;
            for (std::size_t i = 0; i < cfg.antennas; ++i)
                kept += in[i] ? v(i) : 0.0;
            CHECK(kept >= 0.97 * arma::accu(v));
        }
}

TEST_CASE("Channel - support set bookkeeping", "[channel]")
{
    const SupportSet a({5, 1, 3, 3}, Band::downlink, 8);
    CHECK(a.indices() == std::vector<std::size_t>{1, 3, 5});
    CHECK(a.contains(3));
    CHECK_FALSE(a.contains(4));
    const SupportSet b({1, 5}, Band::downlink, 8);
    CHECK(a.includes(b));
    CHECK_FALSE(b.includes(a));
    CHECK(a.excess_over(b) == 1);
    CHECK_THROWS_AS(SupportSet({8}, Band::uplink, 8), std::out_of_range);
}
