#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <carleson/errors.hpp>
#include <carleson/geometry.hpp>
#include <carleson/rng.hpp>
#include <carleson/selfmaps.hpp>

using namespace carleson;

namespace {

complex random_disk_point(Rng& rng) {
    return std::polar(std::sqrt(rng.next_double()) * 0.995,
                      rng.uniform(0.0, 2.0 * pi));
}

complex random_half_point(Rng& rng) {
    return {rng.uniform(1e-3, 4.0), rng.uniform(-4.0, 4.0)};
}

}  // namespace

TEST_CASE("catalog evaluations match closed forms") {
    Rng rng(31, 0);
    HoloMap id = HoloMap::identity(Domain::Disk);
    HoloMap mono = HoloMap::monomial(3);
    HoloMap bl = HoloMap::blaschke({{0.5, 0.0}});
    HoloMap aff = HoloMap::affine(0.5, {0.25, 0.0});
    HoloMap rec = HoloMap::reciprocal();
    HoloMap eq = HoloMap::exp_quartic();
    HoloMap tmap = HoloMap::cayley_map(Domain::Disk);
    HoloMap emap = HoloMap::exp_map_map();
    HoloMap poly = HoloMap::bounded_polynomial({{0.2, 0.0}, {0.3, 0.0}});

    for (int i = 0; i < 100; ++i) {
        complex z = random_disk_point(rng);
        CHECK(id.evaluate(z) == z);
        CHECK(std::abs(mono.evaluate(z) - z * z * z) < 1e-14);
        CHECK(std::abs(bl.evaluate(z) - (0.5 - z) / (1.0 - 0.5 * z)) < 1e-13);
        CHECK(std::abs(poly.evaluate(z) - (0.2 + 0.3 * z)) < 1e-14);
        CHECK(std::abs(tmap.evaluate(z) - cayley(z)) < 1e-13);

        complex w = random_half_point(rng);
        CHECK(std::abs(aff.evaluate(w) - (0.5 * w + 0.25)) < 1e-13);
        CHECK(std::abs(rec.evaluate(w) - 1.0 / w) < 1e-13);
        CHECK(std::abs(eq.evaluate(w) - std::exp(std::pow(cayley(w), 4))) < 1e-12);
        CHECK(std::abs(emap.evaluate(w) - std::exp(-pi * w)) < 1e-13);
    }
}

TEST_CASE("codomain certificates hold on samples") {
    Rng rng(32, 0);
    HoloMap eq = HoloMap::exp_quartic();
    HoloMap lens = HoloMap::lens(0.5);
    for (int i = 0; i < 500; ++i) {
        complex w = random_half_point(rng);
        CHECK(eq.evaluate(w).real() > 0.0);
        complex z = random_disk_point(rng);
        CHECK(std::abs(lens.evaluate(z)) < 1.0);
    }
}

TEST_CASE("construction rejects uncertified maps") {
    CHECK_THROWS_AS(HoloMap::constant({2.0, 0.0}, Domain::Disk, Domain::Disk),
                    CertificationError);
    CHECK_THROWS_AS(HoloMap::blaschke({{1.5, 0.0}}), CertificationError);
    CHECK_THROWS_AS(HoloMap::blaschke({{0.5, 0.0}}, {2.0, 0.0}), CertificationError);
    CHECK_THROWS_AS(HoloMap::monomial(0), CertificationError);
    CHECK_THROWS_AS(HoloMap::affine(-0.5, 0.0), CertificationError);
    CHECK_THROWS_AS(HoloMap::affine(1.0, {-0.25, 0.0}), CertificationError);
    CHECK_THROWS_AS(HoloMap::bounded_polynomial({{0.8, 0.0}, {0.5, 0.0}}),
                    CertificationError);
    CHECK_THROWS_AS(HoloMap::lens(1.2), CertificationError);
}

TEST_CASE("evaluate rejects points outside the open domain") {
    HoloMap id = HoloMap::identity(Domain::Disk);
    CHECK_THROWS_AS(id.evaluate({1.0, 0.0}), DomainMismatch);
    HoloMap rec = HoloMap::reciprocal();
    CHECK_THROWS_AS(rec.evaluate({-0.5, 0.0}), DomainMismatch);
}

TEST_CASE("composition applies the first entry last") {
    HoloMap chain =
        HoloMap::compose({HoloMap::affine(2.0, 0.0), HoloMap::reciprocal()});
    CHECK(std::abs(chain.evaluate({4.0, 0.0}) - complex(0.5, 0.0)) < 1e-14);
    CHECK(chain.domain() == Domain::HalfPlane);
    CHECK(chain.codomain() == Domain::HalfPlane);
}

TEST_CASE("cayley conjugation of the quartic exponential is -tanh(z^4/2)") {
    HoloMap conj = HoloMap::cayley_conjugate(HoloMap::exp_quartic());
    CHECK(conj.domain() == Domain::Disk);
    CHECK(conj.codomain() == Domain::Disk);
    Rng rng(33, 0);
    for (int i = 0; i < 200; ++i) {
        complex z = random_disk_point(rng);
        complex expect = -std::tanh(z * z * z * z / 2.0);
        CHECK(std::abs(conj.evaluate(z) - expect) < 1e-12);
    }
}

TEST_CASE("descriptors round-trip through the parser") {
    Rng rng(34, 0);
    struct Entry {
        std::string text;
        Domain hint;
    };
    const Entry entries[] = {
        {"identity", Domain::Disk},
        {"identity", Domain::HalfPlane},
        {"constant:0.3+0.2i", Domain::Disk},
        {"monomial:3", Domain::Disk},
        {"blaschke:0.5", Domain::Disk},
        {"blaschke:0.5,0.3+0.1i", Domain::Disk},
        {"lens:0.5", Domain::Disk},
        {"poly:0.2,0.3", Domain::Disk},
        {"affine:0.5,0.25", Domain::HalfPlane},
        {"reciprocal", Domain::HalfPlane},
        {"expquartic", Domain::HalfPlane},
        {"cayley", Domain::Disk},
        {"cayley", Domain::HalfPlane},
        {"expmap", Domain::HalfPlane},
        {"tconj(expquartic)", Domain::Disk},
        {"affine:0.6,0.05|reciprocal", Domain::HalfPlane},
        {"affine:0.88,0|expquartic", Domain::HalfPlane},
    };
    for (const Entry& e : entries) {
        HoloMap m = parse_map(e.text, e.hint);
        HoloMap again = parse_map(m.descriptor(), e.hint);
        CHECK(again.domain() == m.domain());
        CHECK(again.codomain() == m.codomain());
        for (int i = 0; i < 30; ++i) {
            complex z = m.domain() == Domain::Disk ? random_disk_point(rng)
                                                   : random_half_point(rng);
            complex a = m.evaluate(z);
            complex b = again.evaluate(z);
            CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
        }
    }
}

TEST_CASE("parser rejects out-of-catalog descriptors") {
    CHECK_THROWS_AS(parse_map("blaschke:1.5", Domain::Disk), UnknownSymbol);
    CHECK_THROWS_AS(parse_map("monomial:0", Domain::Disk), UnknownSymbol);
    CHECK_THROWS_AS(parse_map("affine:-1,0", Domain::HalfPlane), UnknownSymbol);
    CHECK_THROWS_AS(parse_map("frobnicate", Domain::Disk), UnknownSymbol);
    CHECK_THROWS_AS(parse_map("", Domain::Disk), UnknownSymbol);
    CHECK_THROWS_AS(parse_map("monomial:2", Domain::HalfPlane), UnknownSymbol);
    CHECK_THROWS_AS(parse_map("reciprocal", Domain::Disk), UnknownSymbol);
}

TEST_CASE("transfer wires the conformal changes of variable") {
    HoloMap disk_id = HoloMap::identity(Domain::Disk);
    HoloMap viaT = transfer(disk_id, TransferKind::ComposeWithT);
    CHECK(viaT.domain() == Domain::HalfPlane);
    Rng rng(35, 0);
    for (int i = 0; i < 50; ++i) {
        complex w = random_half_point(rng);
        CHECK(std::abs(viaT.evaluate(w) - cayley(w)) < 1e-13);
    }

    HoloMap viaE = transfer(disk_id, TransferKind::ComposeWithE);
    CHECK(viaE.domain() == Domain::HalfPlane);
    for (int i = 0; i < 50; ++i) {
        complex w = random_half_point(rng);
        CHECK(std::abs(viaE.evaluate(w) - std::exp(-pi * w)) < 1e-13);
    }

    HoloMap conj = transfer(HoloMap::monomial(2), TransferKind::ConjugateByT);
    CHECK(conj.domain() == Domain::HalfPlane);
    CHECK(conj.codomain() == Domain::HalfPlane);
    for (int i = 0; i < 50; ++i) {
        complex w = random_half_point(rng);
        complex expect = cayley(cayley(w) * cayley(w));
        CHECK(std::abs(conj.evaluate(w) - expect) < 1e-12);
    }

    CHECK_THROWS_AS(transfer(HoloMap::reciprocal(), TransferKind::ComposeWithE),
                    IncompatibleChain);
    CHECK_THROWS_AS(transfer(HoloMap::cayley_map(Domain::Disk),
                             TransferKind::ConjugateByT),
                    IncompatibleChain);
}

TEST_CASE("schwarz-pick contraction holds across the catalog") {
    const char* disk_symbols[] = {"identity", "monomial:2", "blaschke:0.5",
                                  "lens:0.5", "tconj(expquartic)"};
    for (const char* s : disk_symbols) {
        HoloMap m = parse_map(s, Domain::Disk);
        SchwarzPickReport rep = schwarz_pick_audit(m, 2000, 77);
        CHECK(rep.pairs == 2000);
        CHECK(rep.max_ratio <= 1.0 + 1e-12);
    }
    const char* half_symbols[] = {"affine:2,0.5", "reciprocal", "expquartic",
                                  "affine:0.6,0.05|reciprocal"};
    for (const char* s : half_symbols) {
        HoloMap m = parse_map(s, Domain::HalfPlane);
        SchwarzPickReport rep = schwarz_pick_audit(m, 2000, 78);
        CHECK(rep.max_ratio <= 1.0 + 1e-12);
    }
    // rotations are isometries: the bound is attained
    SchwarzPickReport iso =
        schwarz_pick_audit(HoloMap::identity(Domain::Disk), 500, 79);
    CHECK(iso.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("harnack modulus bounds on the pseudo-disk delta(1, 1/4)") {
    const char* half_symbols[] = {"affine:1,0", "reciprocal", "expquartic",
                                  "affine:0.6,0.05|reciprocal"};
    for (const char* s : half_symbols) {
        HoloMap f = parse_map(s, Domain::HalfPlane);
        HarnackReport rep = harnack_audit(f, {1.0, 0.0}, 0.25, 5000, 91);
        CHECK(rep.lower_bound == doctest::Approx(0.6).epsilon(1e-13));
        CHECK(rep.upper_bound == doctest::Approx(5.0 / 3.0).epsilon(1e-13));
        CHECK(rep.within_bounds);
        CHECK(rep.min_ratio >= rep.lower_bound - 1e-9);
        CHECK(rep.max_ratio <= rep.upper_bound + 1e-9);
    }
    // the identity attains both ends of [3/5, 5/3] in the limit
    HarnackReport id = harnack_audit(HoloMap::affine(1.0, 0.0), {1.0, 0.0}, 0.25,
                                     20000, 92);
    CHECK(id.min_ratio < 0.62);
    CHECK(id.max_ratio > 1.62);
}
