#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support/props.hpp"

namespace {

constexpr std::uint64_t kSeed = 0x5eed2026;
constexpr long kCases = 1000;

void expect(const props::Result& r) {
    INFO(r.name << ": " << r.failures << " of " << r.cases << " failed; first: " << r.first_failure);
    CHECK(r.cases >= kCases);
    CHECK(r.ok());
}

}  // namespace

TEST_SUITE("properties") {
TEST_CASE("epsilon product law") { expect(props::eps_product_law(kSeed, kCases)); }
TEST_CASE("floor sum identity") { expect(props::sum_identity(kSeed + 1, kCases)); }
TEST_CASE("mu-basis spans the tie solution set") { expect(props::basis_spans_solutions(kSeed + 2, kCases)); }
TEST_CASE("tie ring closure") { expect(props::tie_ring_closure(kSeed + 3, kCases)); }
TEST_CASE("graded commutativity") { expect(props::graded_commutativity(kSeed + 4, kCases)); }
TEST_CASE("tie equality for the discriminant-4 pair") { expect(props::tie_equality_pair(kSeed + 5, kCases)); }
TEST_CASE("valuation laws") { expect(props::valuation_laws(kSeed + 6, kCases)); }
TEST_CASE("Smith invariance") { expect(props::smith_invariance(kSeed + 7, kCases)); }
TEST_CASE("block lattice closure") { expect(props::block_lattice_closure(kSeed + 8, kCases)); }
}
