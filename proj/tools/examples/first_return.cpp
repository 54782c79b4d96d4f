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

// Builds the exchange for one generator, prints its tiles and checks the self-similarity of the return to A0.

#include <cstdlib>
#include <iostream>

#include "rexmap.hpp"

int main(int argc, char** argv) {
    using namespace rexmap;
    long n = argc > 1 ? std::atol(argv[1]) : 6;
    EigenData e = eigenvectors(Word({n}));
    std::cout << "lambda = " << decimal_at(e.lambda(), 1) << ", " << decimal_at(e.lambda(), 2) << ", "
              << decimal_at(e.lambda(), 3) << "\n";

    REMPartition rem = build_partition_greedy(e);
    for (std::size_t k = 0; k < kTiles; ++k) {
        std::cout << "A" << k << ": " << rem.tiles[k].size() << " rectangle(s), v = (" << decimal_at(rem.vectors[k].x, 1)
                  << ", " << decimal_at(rem.vectors[k].y, 2) << ")\n";
    }

    VerificationReport rep = verify_single_renorm(n);
    std::cout << rep.partition.cells.size() << " return cells, renormalization "
              << (rep.passed ? "verified" : "failed") << "\n";
    for (std::size_t k = 0; k < kTiles; ++k) {
        std::cout << "  onto A" << k << ":";
        for (const auto& c : rep.check.codings[k]) std::cout << " " << c;
        std::cout << "\n";
    }
    return rep.passed ? 0 : 1;
}
