// Partitions, wedging, h-refinement steps, and the four canonical sequences.
// Structural claims (disjoint/covering, refinement) are checked through the
// exact set algebra; the canonical sequences are pinned block by block at
// small levels where the listings are known in closed form.

#include <catch2/catch_amalgamated.hpp>

#include <hdiag/partition.hpp>

#include <algorithm>
#include <string>
#include <vector>

using namespace hdiag;

namespace {

Partition two_sided_blocks(std::vector<std::string> labels) {
    Partition p;
    for (const std::string& t : labels) p.blocks.push_back(parse_label(Backend::TwoSided, t));
    return p;
}

Rational max_diameter(const Partition& p) {
    Rational best(0);
    for (const ClopenSet& z : p.blocks) {
        Rational d = diameter(z);
        if (best < d) best = d;
    }
    return best;
}

} // namespace

TEST_CASE("validate_partition accepts the canonical levels") {
    for (SystemKind k : {SystemKind::Shift, SystemKind::BitwiseNot, SystemKind::Odometer,
                         SystemKind::ZStar}) {
        PartitionSequence seq = canonical_sequence(k);
        for (int n = 0; n <= 4; ++n)
            REQUIRE(validate_partition(seq.level(n)).empty());
    }
}

TEST_CASE("validate_partition reports each defect class") {
    SECTION("no blocks") {
        Partition p;
        auto v = validate_partition(p);
        REQUIRE(v == std::vector<std::string>{"partition has no blocks"});
    }
    SECTION("empty block") {
        Partition p = two_sided_blocks({"X", "(empty)"});
        auto v = validate_partition(p);
        REQUIRE(std::find(v.begin(), v.end(), "block 1 is empty") != v.end());
    }
    SECTION("overlap") {
        Partition p = two_sided_blocks({"[0]", "0[0]", "[1]"});
        auto v = validate_partition(p);
        REQUIRE(std::find(v.begin(), v.end(), "blocks 0 and 1 overlap") != v.end());
    }
    SECTION("not covering") {
        Partition p = two_sided_blocks({"[0]"});
        auto v = validate_partition(p);
        REQUIRE(v == std::vector<std::string>{"blocks do not cover the whole space"});
    }
    SECTION("mixed backends") {
        Partition p;
        p.blocks = {ClopenSet::whole(Backend::TwoSided), ClopenSet::finite_ints({0})};
        auto v = validate_partition(p);
        REQUIRE(std::find(v.begin(), v.end(), "mixed backends") != v.end());
    }
}

TEST_CASE("refines and containing_block") {
    PartitionSequence shift = canonical_sequence(SystemKind::Shift);
    Partition p1 = shift.level(1);
    Partition p2 = shift.level(2);
    REQUIRE(refines(p2, p1));
    REQUIRE_FALSE(refines(p1, p2));
    REQUIRE(refines(p1, p1));

    REQUIRE(containing_block(p1, parse_label(Backend::TwoSided, "0[0]")) == 0);
    REQUIRE(containing_block(p1, parse_label(Backend::TwoSided, "[1]")) == 1);
    REQUIRE(containing_block(p1, ClopenSet::whole(Backend::TwoSided)) == -1);
}

TEST_CASE("wedge computes all nonempty intersections in label order") {
    PartitionSequence shift = canonical_sequence(SystemKind::Shift);
    Partition p1 = shift.level(1); // [0], [1]
    Homeomorphism sigma = make_system(SystemKind::Shift);

    SECTION("P1 wedge sigma(P1) keys blocks by positions -1 and 0") {
        Partition w = wedge({p1, image_partition(sigma, p1, 1)});
        REQUIRE(w.blocks.size() == 4);
        REQUIRE(w.labels() ==
                std::vector<std::string>{"0[0]", "0[1]", "1[0]", "1[1]"});
        REQUIRE(validate_partition(w).empty());
    }
    SECTION("identities") {
        Partition whole;
        whole.blocks = {ClopenSet::whole(Backend::TwoSided)};
        REQUIRE(wedge({whole, p1}) == p1);
        REQUIRE(wedge({p1, p1}) == p1);
        REQUIRE(wedge({p1}) == p1);
    }
    SECTION("errors") {
        REQUIRE_THROWS_AS(wedge({}), std::invalid_argument);
        Partition ints;
        ints.blocks = {ClopenSet::whole(Backend::Integer)};
        REQUIRE_THROWS_AS(wedge({p1, ints}), std::invalid_argument);
    }
}

TEST_CASE("h_refine_step produces the expected refinements") {
    PartitionSequence shift = canonical_sequence(SystemKind::Shift);
    Homeomorphism sigma = make_system(SystemKind::Shift);
    Homeomorphism tau = make_system(SystemKind::BitwiseNot);
    Partition p1 = shift.level(1);
    Partition p2 = shift.level(2);

    Partition whole;
    whole.blocks = {ClopenSet::whole(Backend::TwoSided)};

    // from the trivial partition, one step lands exactly on the base
    REQUIRE(h_refine_step(whole, p1, sigma) == p1);

    // from P1 with base P1 under the shift: all eight radius-1 cylinders
    Partition step = h_refine_step(p1, p1, sigma);
    REQUIRE(step == p2);

    // under NOT the same step stays at P1: tau(P1) = P1
    Partition nstep = h_refine_step(p1, p1, tau);
    REQUIRE(nstep == p1);

    // the result refines prev, h(prev) and h^-1(prev) by construction
    REQUIRE(refines(step, p1));
    REQUIRE(refines(step, image_partition(sigma, p1, 1)));
    REQUIRE(refines(step, image_partition(sigma, p1, -1)));
}

TEST_CASE("from_bases realizes an h-refined sequence") {
    PartitionSequence canon = canonical_sequence(SystemKind::Shift);
    Partition p1 = canon.level(1);
    PartitionSequence seq =
        PartitionSequence::from_bases(make_system(SystemKind::Shift), {p1});

    REQUIRE(seq.level(0).blocks.size() == 1);
    REQUIRE(seq.level(0).blocks.front().is_whole());
    for (int n = 1; n <= 3; ++n) {
        REQUIRE(seq.level(n).same_blocks(canon.level(n)));
        REQUIRE(validate_partition(seq.level(n)).empty());
        REQUIRE(refines(seq.level(n), seq.level(n - 1)));
    }
    REQUIRE_THROWS_AS(seq.level(-1), std::out_of_range);
}

TEST_CASE("raw sequences expose exactly the given levels") {
    PartitionSequence canon = canonical_sequence(SystemKind::Shift);
    Partition whole;
    whole.blocks = {ClopenSet::whole(Backend::TwoSided)};
    PartitionSequence seq = PartitionSequence::raw(make_system(SystemKind::Shift),
                                                   {whole, canon.level(1)});
    REQUIRE(seq.level(1) == canon.level(1));
    REQUIRE_THROWS_AS(seq.level(2), std::out_of_range);
}

TEST_CASE("canonical sequences have the documented shapes") {
    PartitionSequence shift = canonical_sequence(SystemKind::Shift);
    PartitionSequence nots = canonical_sequence(SystemKind::BitwiseNot);
    PartitionSequence odo = canonical_sequence(SystemKind::Odometer);
    PartitionSequence zst = canonical_sequence(SystemKind::ZStar);

    for (int n = 1; n <= 4; ++n) {
        REQUIRE(shift.level(n).blocks.size() == std::size_t(1) << (2 * n - 1));
        REQUIRE(nots.level(n).blocks.size() == std::size_t(1) << (2 * n - 1));
        REQUIRE(odo.level(n).blocks.size() == std::size_t(1) << n);
        REQUIRE(zst.level(n).blocks.size() == std::size_t(2 * n));
    }
    for (const PartitionSequence* s : {&shift, &nots, &odo, &zst}) {
        REQUIRE(s->level(0).blocks.size() == 1);
        REQUIRE(s->level(0).labels() == std::vector<std::string>{"X"});
    }

    REQUIRE(shift.level(2).labels() ==
            std::vector<std::string>{"0[0]0", "0[0]1", "0[1]0", "0[1]1", "1[0]0",
                                     "1[0]1", "1[1]0", "1[1]1"});
    REQUIRE(odo.level(2).labels() ==
            std::vector<std::string>{"[0]0", "[0]1", "[1]0", "[1]1"});
    REQUIRE(zst.level(3).labels() ==
            std::vector<std::string>{"{-2}", "{-1}", "{0}", "{1}", "{2}", "V(2)"});
}

TEST_CASE("canonical sequences are h-refined with shrinking diameters") {
    for (SystemKind k : {SystemKind::Shift, SystemKind::BitwiseNot, SystemKind::Odometer,
                         SystemKind::ZStar}) {
        PartitionSequence seq = canonical_sequence(k);
        for (int n = 0; n <= 3; ++n) {
            const Partition& fine = seq.level(n + 1);
            const Partition& coarse = seq.level(n);
            REQUIRE(refines(fine, coarse));
            REQUIRE(refines(fine, image_partition(seq.h, coarse, 1)));
            REQUIRE(refines(fine, image_partition(seq.h, coarse, -1)));
            REQUIRE(max_diameter(fine) < max_diameter(coarse));
        }
    }
}

TEST_CASE("level() references stay valid while deeper levels are realized") {
    // Regression: callers bind one level and then ask the same sequence for a
    // much deeper one.  The realized-level cache must not move earlier
    // partitions when it grows.
    PartitionSequence seq = canonical_sequence(SystemKind::Shift);
    const Partition& p1 = seq.level(1);
    const ClopenSet& b0 = p1.blocks.at(0);
    seq.level(9); // realizes eight more levels past the binding
    REQUIRE(&p1 == &seq.level(1));
    REQUIRE(p1.labels() == std::vector<std::string>{"[0]", "[1]"});
    REQUIRE(b0 == parse_label(Backend::TwoSided, "[0]"));
}
