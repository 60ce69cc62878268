#include <doctest.h>

#include <cmath>
#include <vector>

#include "pbg/emission.hpp"
#include "pbg/errors.hpp"
#include "pbg/grid.hpp"

using pbg::EmissionParams;
using pbg::EmissionSpectrum;
using pbg::ReservoirModel;

TEST_CASE("markovian limit: exact Lorentzian of width gamma")
{
    const EmissionParams p{ReservoirModel::none(), 1.0};
    const auto s = pbg::spectrum_eval(p, pbg::uniform_grid(-5.0, 5.0, 2001));
    for (Eigen::Index i = 0; i < s.grid.size(); ++i) {
        const double d = s.grid[i];
        const double want = 1.0 / (d * d + 0.25);
        CHECK(s.values[i] == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK(s.dark_lines.empty());
    REQUIRE(s.peaks.size() == 1);
    CHECK(std::abs(s.peaks[0].delta) <= 1e-9);
    CHECK(s.peaks[0].height == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(pbg::find_dark_lines(s, p).empty());
}

TEST_CASE("spectrum_eval validates gamma")
{
    const EmissionParams p{ReservoirModel::none(), 0.0};
    CHECK_THROWS_WITH_AS(pbg::spectrum_eval(p, pbg::uniform_grid(-1.0, 1.0, 3)),
                         "gamma must be positive", pbg::ConfigError);
}

TEST_CASE("frozen spot values against an independent evaluation")
{
    const EmissionParams d{ReservoirModel::double_band(1.0, -1.0, 1.0), 1.0};
    CHECK(pbg::emission_at(d, 2.0) ==
          doctest::Approx(2.54541478471695226e-01).epsilon(1e-13));
    const EmissionParams s{ReservoirModel::single_band(1.0, 0.0), 1.0};
    CHECK(pbg::emission_at(s, 0.5) ==
          doctest::Approx(2.55479161794565868e-01).epsilon(1e-13));
}

TEST_CASE("symmetric double band: dark lines at both edges, three peaks")
{
    const EmissionParams p{ReservoirModel::double_band(1.0, -1.0, 1.0), 1.0};
    const auto s = pbg::spectrum_eval(p, pbg::uniform_grid(-5.0, 5.0, 2001));

    CHECK(s.dark_lines == std::vector<double>{-1.0, 1.0});
    CHECK(pbg::find_dark_lines(s, p) == std::vector<double>{-1.0, 1.0});

    // Edges land exactly on the (snapped) grid and the samples there are 0.
    for (double e : {-1.0, 1.0}) {
        Eigen::Index at = -1;
        for (Eigen::Index i = 0; i < s.grid.size(); ++i)
            if (s.grid[i] == e)
                at = i;
        REQUIRE(at >= 0);
        CHECK(s.values[at] == 0.0);
    }

    // Gap centre: the two band contributions cancel, leaving the bare line.
    CHECK(pbg::emission_at(p, 0.0) == doctest::Approx(4.0).epsilon(1e-13));

    // Mirror symmetry of the sampled spectrum.
    const Eigen::Index n = s.grid.size();
    for (Eigen::Index i = 0; i < n; ++i)
        CHECK(s.values[i] == doctest::Approx(s.values[n - 1 - i]).epsilon(1e-12));

    // Central line plus one refined satellite peak beyond each edge.
    REQUIRE(s.peaks.size() == 3);
    CHECK(std::abs(s.peaks[1].delta) <= 1e-9);
    CHECK(s.peaks[1].height == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(s.peaks[0].delta == doctest::Approx(-1.419396849031963).epsilon(5e-4));
    CHECK(s.peaks[2].delta == doctest::Approx(+1.419396849031963).epsilon(5e-4));
    CHECK(s.peaks[0].height == doctest::Approx(0.3541518134091746).epsilon(5e-4));
    CHECK(s.peaks[2].height == doctest::Approx(0.3541518134091747).epsilon(5e-4));
}

TEST_CASE("single band: dark line at the edge, dressed line inside the gap")
{
    const EmissionParams p{ReservoirModel::single_band(1.0, 0.0), 1.0};
    const auto s = pbg::spectrum_eval(p, pbg::uniform_grid(-5.0, 5.0, 2001));
    CHECK(s.dark_lines == std::vector<double>{0.0});
    CHECK(pbg::emission_at(p, 0.0) == 0.0);
    // The gap-side resonance sits where delta = Im K~(-i delta): delta = -1,
    // and there the absorptive part vanishes, so S = 4/gamma exactly.
    CHECK(pbg::emission_at(p, -1.0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(pbg::find_dark_lines(s, p) == std::vector<double>{0.0});
}

TEST_CASE("band edges off the sample grid are snapped onto it")
{
    const EmissionParams p{ReservoirModel::double_band(1.0, -1.0, 1.0), 1.0};
    // 2000 points: step 10/1999, edges not representable.
    const auto s = pbg::spectrum_eval(p, pbg::uniform_grid(-5.0, 5.0, 2000));
    CHECK(s.grid.size() == 2000);
    for (double e : {-1.0, 1.0}) {
        Eigen::Index at = -1;
        for (Eigen::Index i = 0; i < s.grid.size(); ++i)
            if (s.grid[i] == e)
                at = i;
        REQUIRE(at >= 0);
        CHECK(s.values[at] == 0.0);
    }
    pbg::require_strictly_increasing(s.grid);
}

TEST_CASE("find_dark_lines reports edges even outside the sampled range")
{
    const EmissionParams p{ReservoirModel::double_band(1.0, -1.0, 1.0), 1.0};
    const auto s = pbg::spectrum_eval(p, pbg::uniform_grid(0.5, 5.0, 901));
    CHECK(s.dark_lines == std::vector<double>{1.0});
    CHECK(pbg::find_dark_lines(s, p) == std::vector<double>{-1.0, 1.0});
}

TEST_CASE("find_dark_lines rejects a washed-out dark line")
{
    // Coupling too weak: the spectrum stays Lorentzian-sized right next to
    // the nominal edge, so the verification must fail.
    const EmissionParams p{ReservoirModel::double_band(1e-12, -1.0, 1.0), 1.0};
    const auto s = pbg::spectrum_eval(p, pbg::uniform_grid(-5.0, 5.0, 2001));
    CHECK_THROWS_AS(pbg::find_dark_lines(s, p), pbg::ContractViolation);
}

TEST_CASE("find_dark_lines rejects zeros away from any edge")
{
    const EmissionParams p{ReservoirModel::double_band(1.0, -1.0, 1.0), 1.0};
    auto s = pbg::spectrum_eval(p, pbg::uniform_grid(-5.0, 5.0, 2001));
    s.values[200] = 0.0; // plant a bogus zero at delta = -4
    CHECK_THROWS_AS(pbg::find_dark_lines(s, p), pbg::ContractViolation);
}

TEST_CASE("find_peaks refines maxima on a hand-built parabola")
{
    EmissionSpectrum s;
    s.grid = pbg::uniform_grid(0.0, 4.0, 5);
    s.values.resize(5);
    s.values << 0.0, 1.0, 4.0, 1.0, 0.0;
    auto peaks = pbg::find_peaks(s);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].delta == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(peaks[0].height == doctest::Approx(4.0).epsilon(1e-14));

    s.values << 0.0, 3.0, 4.0, 4.5, 0.0;
    peaks = pbg::find_peaks(s);
    REQUIRE(peaks.size() == 1);
    // Newton parabola through (2,4), (3,4.5), (4,0): vertex at 2.6.
    CHECK(peaks[0].delta == doctest::Approx(2.6).epsilon(1e-12));
    CHECK(peaks[0].height == doctest::Approx(4.9).epsilon(1e-12));
}
