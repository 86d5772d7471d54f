#include "doctest.h"
#include "helpers.hpp"
#include "tgr/nebe.hpp"

using namespace tgr;

TEST_SUITE("nebe") {

TEST_CASE("block decomposition for p = 3") {
    const BlockDecomposition B = BlockDecomposition::build(3);
    CHECK(B.h() == 6);
    CHECK(B.pattern() == std::vector<std::vector<std::string>>{{"Xi'", "Xi'"}, {"tdot Xi'", "Xi'"}});
    for (long k = 0; k < 2; ++k)
        for (long l = 0; l < 2; ++l)
            for (long k2 = 0; k2 < 2; ++k2)
                for (long l2 = 0; l2 < 2; ++l2) {
                    const RatMatrix prod = B.block_unit(k, l) * B.block_unit(k2, l2);
                    CHECK(prod == (l == k2 ? B.block_unit(k, l2) : RatMatrix(6, 6)));
                }
    CHECK(B.in_block_lattice(B.udot()));
    for (const auto& r : B.rhodot()) CHECK(B.in_block_lattice(r));
}

TEST_CASE("rational and modular lattices agree for p = 3") {
    const BlockDecomposition B = BlockDecomposition::build(3);
    const ZpLattice xi = B.xi_lattice();
    CHECK(xi == B.block_lattice());
    CHECK(xi.log_index() == 27);
    CHECK(B.block_lattice().log_index() == 27);
    const HowellModule M = B.xi_module(20), L = B.block_module(20);
    CHECK(M.log_index() == 27);
    CHECK(L.log_index() == 27);
    CHECK(M.contains(L));
    CHECK(L.contains(M));
    const ResidueRing& R = M.ring();
    for (const auto& row : xi.basis()) {
        std::vector<std::uint64_t> r(row.size());
        for (std::size_t q = 0; q < row.size(); ++q) r[q] = R.reduce(row[q]);
        CHECK(M.contains(r));
    }
}

TEST_CASE("Nebe decomposition") {
    const NebeReport r = verify_nd3(3);
    CHECK(r.pass);
    CHECK(r.colength_xi == 27);
    CHECK(r.colength_blocks == 27);
    for (const auto& c : r.checks) CHECK_MESSAGE(c.ok, c.name);
    const NebeReport r5 = verify_nd3(5);
    CHECK(r5.pass);
    CHECK(r5.colength_xi == 350);
}

TEST_CASE("Ext over U wr H against T wr C_p") {
    const NebeReport r = verify_nd7(3, 4);
    CHECK(r.pass);
    for (const auto& c : r.checks) CHECK_MESSAGE(c.ok, c.name);
}

TEST_CASE("size guard") {
    try {
        BlockDecomposition::build(7);
        FAIL("expected a resource error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::resource);
    }
}

}  // TEST_SUITE
