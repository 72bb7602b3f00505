// Copyright 2025 The diamond-circuits Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "diamond/tableau.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace diamond;

TEST(tableau, reset_then_measure_is_deterministic_zero) {
    Circuit c = parse_stim_text("QUBIT_COORDS(0, 0) 0\nR 0\nM 0\nDETECTOR(0, 0, 0) rec[-1]");
    auto rep = tableau_run(c);
    ASSERT_EQ(rep.measurements.size(), 1u);
    EXPECT_TRUE(rep.measurements[0].deterministic());
    EXPECT_FALSE(rep.measurements[0].constant);
    EXPECT_TRUE(rep.all_detectors_deterministic_zero());
}

TEST(tableau, x_basis_round_trip) {
    Circuit c = parse_crumble("Q(0,0)0;RX_0;MX_0;DT(0,0,0)rec[-1]");
    auto rep = tableau_run(c);
    EXPECT_TRUE(rep.all_detectors_deterministic_zero());
}

TEST(tableau, fresh_z_measurement_of_plus_state_is_random) {
    Circuit c = parse_crumble("Q(0,0)0;RX_0;M_0");
    auto rep = tableau_run(c);
    EXPECT_FALSE(rep.measurements[0].deterministic());
}

TEST(tableau, bell_pair_parity_deterministic) {
    // Two random Z measurements of a Bell pair agree; the parity is a valid
    // detector even though each outcome is a coin.
    Circuit c = parse_crumble("Q(0,0)0;Q(1,0)1;RX_0;R_1;CX_0_1;M_0_1;DT(0,0,0)rec[-1]_rec[-2]");
    auto rep = tableau_run(c);
    EXPECT_FALSE(rep.measurements[0].deterministic());
    EXPECT_FALSE(rep.measurements[1].deterministic());
    EXPECT_TRUE(rep.all_detectors_deterministic_zero());
}

TEST(tableau, ghz_stabilizer_group_contains_parity) {
    Circuit c = parse_crumble("Q(0,0)0;Q(1,0)1;Q(2,0)2;RX_0;R_1;R_2;CX_0_1_1_2;TICK");
    auto rep = tableau_run(c, {0});
    ASSERT_EQ(rep.snapshots.size(), 1u);
    const auto& g = rep.snapshots[0];
    PauliRow zz01{{0}, {0b011}};
    PauliRow zz12{{0}, {0b110}};
    PauliRow xxx{{0b111}, {0}};
    PauliRow z0{{0}, {0b001}};
    EXPECT_TRUE(g.contains(zz01));
    EXPECT_TRUE(g.contains(zz12));
    EXPECT_TRUE(g.contains(xxx));
    EXPECT_FALSE(g.contains(z0));
}

TEST(tableau, reference_circuit_detectors_all_deterministic_zero) {
    Circuit c = parse_crumble(diamond::testing::read_data_file("diamond_d5_reference.crumble"));
    auto rep = tableau_run(c);
    EXPECT_EQ(rep.detectors.size(), 240u);
    EXPECT_TRUE(rep.all_detectors_deterministic_zero());
    ASSERT_EQ(rep.observables.size(), 1u);
    EXPECT_TRUE(rep.observables[0].deterministic());
}
