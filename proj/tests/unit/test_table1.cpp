#include <doctest.h>

#include "relspin/property_check.hpp"

using namespace relspin;
using namespace relspin::spin_ops;

TEST_CASE("property checker reproduces the reference table for all seven operators") {
    for (const auto kind : all_kinds) {
        const PropertyReport r = check_properties(kind, 128);
        const auto expected = table_reference(kind);
        INFO("operator ", kind_name(kind), " violations: h=", r.hermitian_violation,
             " v=", r.vector_violation, " c=", r.h0_commutator_violation,
             " su2=", r.su2_violation, " e=", r.eigenvalue_violation);
        CHECK(r.booleans() == expected);
    }
}

TEST_CASE("verdicts are stable under sample count and seed changes") {
    for (const auto kind : {SpinOperatorKind::Pauli, SpinOperatorKind::Czachor,
                            SpinOperatorKind::Pryce}) {
        const auto a = check_properties(kind, 10).booleans();
        const auto b = check_properties(kind, 128).booleans();
        const auto c = check_properties(kind, 128, 0xfeedbeef).booleans();
        CHECK(a == b);
        CHECK(b == c);
    }
}

TEST_CASE("passing kinds pass with wide margin; failing kinds fail decisively") {
    const PropertyReport fw = check_properties(SpinOperatorKind::FoldyWouthuysen, 64);
    CHECK(fw.hermitian_violation < 1e-13);
    CHECK(fw.su2_violation < 1e-12);
    CHECK(fw.eigenvalue_violation < 1e-12);

    const PropertyReport cz = check_properties(SpinOperatorKind::Czachor, 64);
    CHECK(cz.su2_violation > 1e-4);
    CHECK(cz.eigenvalue_violation > 1e-4);

    const PropertyReport pauli = check_properties(SpinOperatorKind::Pauli, 64);
    CHECK(pauli.h0_commutator_violation > 1e-6);
}
