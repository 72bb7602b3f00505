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

#include "diamond/circuit.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace diamond;

TEST(parse_stim_text, minimal) {
    Circuit c = parse_stim_text("QUBIT_COORDS(0, 2) 0\nR 0");
    ASSERT_EQ(c.qubits.size(), 1u);
    EXPECT_EQ(c.qubits[0].index, 0);
    EXPECT_EQ(c.qubits[0].x, 0);
    EXPECT_EQ(c.qubits[0].y, 2);
    ASSERT_EQ(c.instructions.size(), 1u);
    EXPECT_EQ(c.instructions[0].op, Op::RZ);
    EXPECT_EQ(c.measurement_count(), 0);
}

TEST(parse_stim_text, empty_input) {
    Circuit c = parse_stim_text("");
    EXPECT_TRUE(c.qubits.empty());
    EXPECT_TRUE(c.instructions.empty());
    EXPECT_EQ(c.measurement_count(), 0);
}

TEST(parse_stim_text, comments_and_measurements) {
    Circuit c = parse_stim_text("# header\nQUBIT_COORDS(1, 1) 3\nM 3  # trailing\nDETECTOR(1, 1, 0) rec[-1]\n");
    EXPECT_EQ(c.measurement_count(), 1);
    auto dets = c.resolved_detectors();
    ASSERT_EQ(dets.size(), 1u);
    EXPECT_EQ(*dets[0].begin(), 0);
}

TEST(parse_stim_text, errors) {
    EXPECT_THROW(parse_stim_text("FROB 1 2"), std::invalid_argument);
    EXPECT_THROW(parse_stim_text("M 0\nDETECTOR rec[-2]"), std::invalid_argument);
    EXPECT_THROW(parse_stim_text("DETECTOR rec[1]"), std::invalid_argument);
}

TEST(parse_crumble, single_qubit_round_trip) {
    Circuit c = parse_crumble("Q(0,0)0;RX_0;MX_0");
    ASSERT_EQ(c.qubits.size(), 1u);
    ASSERT_EQ(c.instructions.size(), 2u);
    EXPECT_EQ(c.instructions[0].op, Op::RX);
    EXPECT_EQ(c.instructions[1].op, Op::MX);
    EXPECT_EQ(c.measurement_count(), 1);
}

TEST(parse_crumble, m_is_z_basis_and_r_is_z_basis) {
    Circuit c = parse_crumble("Q(0,0)0;R_0;M_0");
    EXPECT_EQ(c.instructions[0].op, Op::RZ);
    EXPECT_EQ(c.instructions[1].op, Op::MZ);
}

TEST(parse_crumble, errors) {
    EXPECT_THROW(parse_crumble("Q(0,0)0;;M_0"), std::invalid_argument);
    EXPECT_THROW(parse_crumble("BLORP_0"), std::invalid_argument);
    EXPECT_THROW(parse_crumble("M_0;DT(0,0,0)rec[-2]"), std::invalid_argument);
}

TEST(parse_crumble, reference_circuit_shape) {
    Circuit c = parse_crumble(diamond::testing::read_data_file("diamond_d5_reference.crumble"));
    EXPECT_EQ(c.qubits.size(), 41u);
    EXPECT_TRUE(validate(c).empty());

    auto layers = c.measurement_layers();
    ASSERT_GE(layers.size(), 1u);
    EXPECT_EQ(layers[0].size(), 16u);
    EXPECT_EQ(layers.size(), 20u);

    // First measurement layer is followed by exactly 6 detectors.
    size_t first_m = 0;
    while (c.instructions[first_m].op != Op::MZ) first_m++;
    size_t i = first_m;
    while (i < c.instructions.size() &&
           (c.instructions[i].op == Op::MZ || c.instructions[i].op == Op::MX)) {
        i++;
    }
    size_t ndet = 0;
    while (i < c.instructions.size() && c.instructions[i].op == Op::DETECTOR) {
        ndet++;
        i++;
    }
    EXPECT_EQ(ndet, 6u);

    // Every record reference resolves to a measurement, and the observable has
    // weight 5 over the final data readout.
    auto record = c.measurement_record();
    for (const auto& ins : c.instructions) {
        for (const auto& r : ins.recs) {
            ASSERT_GE(r.abs, 0);
            ASSERT_LT(r.abs, (int64_t)record.size());
        }
    }
    auto obs = c.resolved_observables();
    ASSERT_EQ(obs.size(), 1u);
    EXPECT_EQ(obs[0].size(), 5u);
}

TEST(serialize, empty_circuit) {
    EXPECT_EQ(serialize(Circuit{}, CircuitFormat::StimText), "");
    EXPECT_EQ(serialize(Circuit{}, CircuitFormat::Crumble), "");
}

TEST(serialize, single_cx_formats) {
    Circuit c;
    c.qubits = {{0, 0, 0}, {1, 1, 1}};
    Instruction cx;
    cx.op = Op::CX;
    cx.qubits = {0, 1};
    c.instructions.push_back(cx);
    std::string st = serialize(c, CircuitFormat::StimText);
    EXPECT_NE(st.find("CX 0 1"), std::string::npos);
    std::string cr = serialize(c, CircuitFormat::Crumble);
    EXPECT_NE(cr.find("CX_0_1"), std::string::npos);
}

TEST(serialize, reference_round_trips_both_formats) {
    std::string frag = diamond::testing::read_data_file("diamond_d5_reference.crumble");
    Circuit c = parse_crumble(frag);
    Circuit c2 = parse_crumble(serialize(c, CircuitFormat::Crumble));
    EXPECT_EQ(c, c2);
    Circuit c3 = parse_stim_text(serialize(c, CircuitFormat::StimText));
    EXPECT_EQ(c, c3);
    // serialization is byte-stable
    EXPECT_EQ(serialize(c, CircuitFormat::Crumble), serialize(c2, CircuitFormat::Crumble));
}

TEST(validate, forced_violations) {
    // DETECTOR referencing rec[-5] with only 3 prior measurements is already a
    // parse error; build the bad reference directly.
    Circuit c;
    c.qubits = {{0, 0, 0}, {1, 1, 0}, {2, 2, 0}};
    Instruction m;
    m.op = Op::MZ;
    m.qubits = {0, 1, 2};
    c.instructions.push_back(m);
    Instruction det;
    det.op = Op::DETECTOR;
    det.recs = {{-5, -2}};
    c.instructions.push_back(det);
    auto diags = validate(c);
    ASSERT_EQ(diags.size(), 1u);
    EXPECT_EQ(diags[0].instruction_index, 1u);

    Circuit c2;
    c2.qubits = {{0, 0, 0}, {1, 1, 0}, {2, 2, 0}};
    Instruction cx;
    cx.op = Op::CX;
    cx.qubits = {0, 1, 2};
    c2.instructions.push_back(cx);
    auto diags2 = validate(c2);
    ASSERT_EQ(diags2.size(), 1u);
    EXPECT_NE(diags2[0].reason.find("even"), std::string::npos);
}

TEST(validate, layer_exclusivity) {
    Circuit c;
    c.qubits = {{0, 0, 0}, {1, 1, 0}, {2, 2, 0}};
    Instruction cx1;
    cx1.op = Op::CX;
    cx1.qubits = {0, 1};
    Instruction cx2;
    cx2.op = Op::CX;
    cx2.qubits = {1, 2};
    c.instructions.push_back(cx1);
    c.instructions.push_back(cx2);
    EXPECT_FALSE(validate(c).empty());
    Instruction tick;
    tick.op = Op::TICK;
    c.instructions = {cx1, tick, cx2};
    EXPECT_TRUE(validate(c).empty());
}
