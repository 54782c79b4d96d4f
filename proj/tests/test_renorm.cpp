/*
   Copyright 2026 The rexmap Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "rexmap/renorm.hpp"

using namespace rexmap;

namespace {

std::array<std::vector<std::string>, kTiles> load_codings(const std::string& path) {
    std::array<std::vector<std::string>, kTiles> out;
    std::ifstream in(path);
    EXPECT_TRUE(in.good()) << path;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int k;
        ls >> k;
        std::string c;
        while (ls >> c) out[static_cast<std::size_t>(k)].push_back(c);
    }
    return out;
}

LatticePoint coding_sum(const std::string& coding) {
    LatticePoint s{};
    for (char ch : coding) s = s + family_steps()[static_cast<std::size_t>(ch - '0')];
    return s;
}

}  // namespace

TEST(FirstReturn, GoldenCodingsSix) {
    auto golden = load_codings(std::string(REXMAP_TEST_DATA) + "/n6_return_codings.txt");
    VerificationReport rep = verify_single_renorm(6);
    ASSERT_TRUE(rep.passed);
    std::size_t total = 0;
    for (std::size_t k = 0; k < kTiles; ++k) {
        auto got = rep.check.codings[k];
        std::sort(got.begin(), got.end());
        EXPECT_EQ(got, golden[k]) << "tile " << k;
        total += golden[k].size();
    }
    EXPECT_EQ(rep.partition.cells.size(), total);
}

TEST(FirstReturn, ReturnVectorsAreScaledTranslations) {
    EigenData e = eigenvectors(Word({6}));
    REMPartition rem = build_partition_greedy(e);
    ReturnPartition ret = first_return_partition(rem, rem.tiles[0]);
    AffineConjugacy phi{e.xi[1], e.xi[1]};
    ConjugacyCheck c = check_conjugacy(ret, phi, rem);
    for (std::size_t k = 0; k < kTiles; ++k)
        for (const auto& code : c.codings[k]) {
            auto it = std::find_if(ret.cells.begin(), ret.cells.end(), [&](const CodedCell& x) { return x.coding == code; });
            ASSERT_NE(it, ret.cells.end());
            EXPECT_EQ(it->return_vector, phi.rho(rem.vectors[k]));
        }
}

TEST(FirstReturn, CodingSumIdentity) {
    for (long n : {6, 8}) {
        EigenData e = eigenvectors(Word({n}));
        REMPartition rem = build_partition_greedy(e);
        ReturnPartition ret = first_return_partition(rem, rem.tiles[0]);
        for (const auto& cell : ret.cells) {
            EXPECT_EQ(cell.lattice_vector, coding_sum(cell.coding)) << cell.coding;
            EXPECT_EQ(cell.return_vector.x, lattice_value(e.xi, cell.lattice_vector));
            EXPECT_EQ(cell.coding[0], '0');
        }
    }
}

TEST(FirstReturn, CellsCoverTarget) {
    EigenData e = eigenvectors(Word({7}));
    REMPartition rem = build_partition_greedy(e);
    ReturnPartition ret = first_return_partition(rem, rem.tiles[0]);
    std::vector<RectRegion> parts;
    for (const auto& c : ret.cells) parts.push_back(c.region);
    EXPECT_EQ(region_union(parts), rem.tiles[0]);
    for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t b = a + 1; b < parts.size(); ++b) EXPECT_TRUE(interiors_disjoint(parts[a], parts[b]));
    EXPECT_THROW(first_return_partition(rem, RectRegion{}), DomainError);
}

TEST(FirstReturn, IterationBudget) {
    EigenData e = eigenvectors(Word({6}));
    REMPartition rem = build_partition_greedy(e);
    EXPECT_THROW(first_return_partition(rem, rem.tiles[0], 3), IterationBudgetExceeded);
}

TEST(EtaPrime, TransposeImages) {
    auto ep = eta_prime(generator_matrix(6));
    MatrixZ3 mt = generator_matrix(6).transpose();
    for (std::size_t j = 0; j < kTiles; ++j) {
        const auto& s = family_steps()[j];
        LatticePoint want{mt(0, 0).get_si() * s.a + mt(0, 1).get_si() * s.b + mt(0, 2).get_si() * s.c,
                          mt(1, 0).get_si() * s.a + mt(1, 1).get_si() * s.b + mt(1, 2).get_si() * s.c,
                          mt(2, 0).get_si() * s.a + mt(2, 1).get_si() * s.b + mt(2, 2).get_si() * s.c};
        EXPECT_EQ(ep[j], want);
    }
    // Values scale by lambda: eta'_j . xi = lambda (eta_j . xi).
    EigenData e = eigenvectors(Word({6}));
    for (std::size_t j = 0; j < kTiles; ++j)
        EXPECT_EQ(lattice_value(e.xi, ep[j]), e.lambda() * lattice_value(e.xi, family_steps()[j]));
}

TEST(SingleRenorm, Generators) {
    for (long n = 6; n <= 9; ++n) {
        VerificationReport rep = verify_single_renorm(n);
        EXPECT_TRUE(rep.passed) << n;
        EXPECT_TRUE(rep.check.failures.empty()) << n;
    }
}

TEST(Multistage, PowerOfGenerator) {
    ChainReport rep = verify_multistage_renorm(parse_word("6,6"));
    EXPECT_TRUE(rep.passed);
    EXPECT_EQ(rep.detailed.size(), 1u);
    EXPECT_TRUE(rep.wrap.passed);
}

TEST(Multistage, NotMultistage) { EXPECT_THROW(verify_multistage_renorm(parse_word("6,8")), NotMultistage); }

TEST(Psi, Shift) {
    LatticeAffine map = psi(Word({6}), 0);
    EXPECT_EQ(map({0, 0, 0}), (LatticePoint{1, -1, 0}));
    EXPECT_EQ(map.inverse(LatticePoint{1, -1, 0}), (LatticePoint{0, 0, 0}));
    EXPECT_THROW(psi(Word({6}), 1), DomainError);
}

TEST(Psi, LatticeConjugacySix) {
    LatticeConjugacyReport rep = lattice_conjugacy_check(Word({6}), 0, 500);
    EXPECT_EQ(rep.sampled, 500u);
    EXPECT_TRUE(rep.passed);
    EXPECT_TRUE(rep.failures.empty());
}

TEST(AffineConjugacy, RoundTrip) {
    EigenData e = eigenvectors(Word({6}));
    AffineConjugacy phi{e.xi[1], e.xi[1]};
    FieldPtr f = e.field;
    ExactPoint2 p{FieldElement(f, Rational(1, 3)), FieldElement(f, Rational(2, 5))};
    EXPECT_EQ(phi.forward(phi.inverse(p)), p);
    RectRegion X = unit_square(f);
    EXPECT_EQ(phi.inverse(X), build_partition_greedy(e).tiles[0]);
    EXPECT_EQ(phi.forward(phi.inverse(X)), X);
}
