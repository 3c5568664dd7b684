#include "cfusion/scenario.hpp"

namespace cfusion::scenario {

std::vector<std::pair<std::string, std::string>> bundled_examples() {
    return {
        {"blocks.yaml", R"(# Block submodules I1 = {1, 2}, I2 = {2, 3} over C^3 with unit weights.
seed: 1
algebra: {kind: complex, N: 3}
submodules:
  H1: {block: [1, 2]}
  H2: {block: [2, 3]}
weights:
  ones:
    - [1, 1, 1]
    - [1, 1, 1]
  other:
    - [2, 1, 0.5]
    - [1, 3, 1]
frames:
  F: {submodules: [H1, H2], weights: ones}
maps:
  phase:
    fibers:
      - {scale: 3, rotation: [[[0, 1]]]}
      - {scale: 1, rotation: [[[-1, 0]]]}
      - {scale: 0.5}
commands:
  - {op: check-frame, frame: F}
  - {op: bounds, frame: F}
  - {op: tightness, frame: F}
  - {op: multiplier, frame: F}
  - {op: cone, frame: F, add: other}
  - {op: cone, frame: F, scale: 2.5}
  - {op: transport, frame: F, map: phase}
  - {op: verify-oracle, frame: F, samples: 1000}
)"},
        {"quaternion.yaml", R"(# The same block configuration over the quaternions H^3.
seed: 2
algebra: {kind: quaternion, N: 3}
submodules:
  H1: {block: [1, 2]}
  H2: {block: [2, 3]}
weights:
  ones:
    - [1, 1, 1]
    - [1, 1, 1]
frames:
  F: {submodules: [H1, H2], weights: ones}
maps:
  turn:
    fibers:
      - {scale: 2, quaternion: [0.5, 0.5, 0.5, 0.5]}
      - {scale: 1, quaternion: [0, 0, 1, 0]}
      - {scale: 0.25, quaternion: [0, 0, 0, 1]}
vectors:
  x: [[1, 0, 0, 0], [0, 1, 2, 0], [0, 0, 0, 3]]
commands:
  - {op: bounds, frame: F}
  - {op: tightness, frame: F}
  - {op: multiplier, frame: F}
  - {op: reconstruct, frame: F, vector: x}
  - {op: transport, frame: F, map: turn}
  - {op: verify-oracle, frame: F, samples: 1000}
)"},
        {"angle_counterexample.yaml", R"(# U0 = span{e4, e8} and V0 = span{e2, e4, e6, e8} in C^8 are not orthogonal,
# yet their projection distance is 1. Swapping U0 for V0 in the Parseval
# frame (U0, U0^perp) lands exactly on the threshold.
seed: 3
algebra: {kind: complex, N: 1}
module: {dims: [8]}
submodules:
  U0:
    fibers:
      - span: [[0, 0, 0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 0, 1]]
  V0:
    fibers:
      - span: [[0, 1, 0, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 0, 0, 1]]
  U0c: {complement: U0}
weights:
  ones: [[1], [1]]
frames:
  F: {submodules: [U0, U0c], weights: ones}
perturbations:
  swap: {frame: F, candidates: [V0, U0c]}
commands:
  - {op: bounds, frame: F}
  - {op: perturb, perturbation: swap}
)"},
        {"perturbation.yaml", R"(# Three lines in C^2 with frame operator [[1.5, 0.5], [0.5, 1.5]], so A = 1.
seed: 4
algebra: {kind: complex, N: 1}
module: {dims: [2]}
submodules:
  L1: {fibers: [{span: [[1, 0]]}]}
  L2: {fibers: [{span: [[0, 1]]}]}
  L3: {fibers: [{span: [[1, 1]]}]}
weights:
  ones: [[1], [1], [1]]
frames:
  F: {submodules: [L1, L2, L3], weights: ones}
maps:
  spin:
    fibers:
      - scale: 2
        rotation: [[0.8775825618903728, -0.479425538604203], [0.479425538604203, 0.8775825618903728]]
vectors:
  x: [[1, [0, 1]]]
perturbations:
  small: {frame: F, rotate: 0.3}
  quarter: {frame: F, rotate: 1.5707963267948966}
  sampled: {frame: F, random_rotation: {}}
commands:
  - {op: bounds, frame: F}
  - {op: reconstruct, frame: F, vector: x}
  - {op: transport, frame: F, map: spin}
  - {op: verify-oracle, frame: F, samples: 1000}
  - {op: perturb, perturbation: small, p: 2}
  - {op: perturb, perturbation: quarter}
  - {op: perturb, perturbation: sampled, p: 3}
)"},
    };
}

} // namespace cfusion::scenario
