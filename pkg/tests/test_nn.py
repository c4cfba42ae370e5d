"""Network semantics: forward pass, argmax ties, digests, sampled refutation."""

from __future__ import annotations

import random

import pytest

from gramcert.certify import certify
from gramcert.lipschitz import gen_all_bounds
from gramcert.linalg import mv_product
from gramcert.nn import (
    apply_nn,
    argmax,
    check_network,
    is_input,
    model_digest,
    relu,
    sampled_robustness_check,
)
from gramcert.rational import Q

from helpers import rand_net, rand_vector, sq_norm

# one hidden weight 0.9, then rows [1] and [-1]: doubles every margin story
TWO_LAYER_09 = [[[Q(9, 10)]], [[Q(1)], [Q(-1)]]]
SINGLE_LAYER_09 = [[[Q(9, 10)], [Q(-9, 10)]]]


def naive_forward(layers, v):
    # independent recursion: peel the first layer, ReLU, recurse
    if len(layers) == 1:
        return mv_product(layers[0], v)
    hidden = [relu(x) for x in mv_product(layers[0], v)]
    return naive_forward(layers[1:], hidden)


class TestCheckNetwork:
    def test_accepts_chained_layers(self):
        check_network(TWO_LAYER_09)

    def test_rejects_chain_violation_naming_both_layers(self):
        bad = [[[Q(1), Q(0)], [Q(0), Q(1)]], [[Q(1), Q(2), Q(3)]]]
        with pytest.raises(ValueError) as exc:
            check_network(bad)
        assert "layer 0" in str(exc.value)
        assert "layer 1" in str(exc.value)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            check_network([])


class TestApply:
    def test_positive_input_passes_the_hidden_relu(self):
        assert apply_nn(TWO_LAYER_09, [Q(1)]) == [Q(9, 10), Q(-9, 10)]

    def test_negative_input_is_clamped(self):
        assert apply_nn(TWO_LAYER_09, [Q(-1)]) == [Q(0), Q(0)]

    def test_relu_all_but_last_layer(self):
        # a single layer applies no ReLU at all
        assert apply_nn(SINGLE_LAYER_09, [Q(-1)]) == [Q(-9, 10), Q(9, 10)]

    def test_rejects_wrong_input_length(self):
        with pytest.raises(ValueError):
            apply_nn(TWO_LAYER_09, [Q(1), Q(2)])

    def test_matches_naive_recursive_oracle(self):
        rng = random.Random(301)
        for _ in range(100):
            net = rand_net(rng)
            v = rand_vector(rng, len(net[0][0]))
            assert apply_nn(net, v) == naive_forward(net, v)

    def test_relu_is_1_lipschitz_componentwise(self):
        rng = random.Random(302)
        for _ in range(200):
            a = Q(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 4))
            b = Q(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 4))
            assert abs(relu(a) - relu(b)) <= abs(a - b)


class TestArgmax:
    def test_ties_resolve_to_lowest_index(self):
        assert argmax([Q(0), Q(0)]) == 0
        assert argmax([Q(1), Q(2), Q(2)]) == 1

    def test_shift_invariant(self):
        rng = random.Random(303)
        for _ in range(100):
            v = rand_vector(rng, rng.randint(1, 8))
            shift = Q(rng.randint(-100, 100), 7)
            assert argmax(v) == argmax([x + shift for x in v])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            argmax([])


class TestModelDigest:
    def test_independent_of_spelling(self):
        a = [[[Q(9, 10)], [Q(-9, 10)]]]
        b = [[[Q(90, 100)], [Q(-18, 20)]]]
        assert model_digest(a) == model_digest(b)

    def test_sensitive_to_values_and_shape(self):
        assert model_digest(TWO_LAYER_09) != model_digest(SINGLE_LAYER_09)
        assert model_digest([[[Q(1)]]]) != model_digest([[[Q(1)], [Q(1)]]])


class TestSampledRobustnessCheck:
    def test_refutes_the_single_layer_decision_boundary(self):
        # at v=0 both outputs tie at 0 and any positive input flips class 1
        # to class 0's loss: a tiny perturbation changes the argmax
        assert (
            sampled_robustness_check(SINGLE_LAYER_09, [Q(0)], Q(1, 10), 1000, seed=1)
            is False
        )

    def test_the_hidden_relu_variant_never_flips(self):
        # the hidden ReLU clamps negatives, so every input yields argmax 0
        # under lowest-index ties; no perturbation refutes robustness at v=0
        assert (
            sampled_robustness_check(TWO_LAYER_09, [Q(0)], Q(10), 2000, seed=2)
            is True
        )
        assert apply_nn(TWO_LAYER_09, [Q(0)]) == [Q(0), Q(0)]

    def test_zero_radius_is_vacuously_true(self):
        assert sampled_robustness_check(SINGLE_LAYER_09, [Q(0)], Q(0), 100, seed=3)

    def test_single_output_is_vacuously_true(self):
        net = [[[Q(5), Q(-3)]]]
        assert sampled_robustness_check(net, [Q(1), Q(1)], Q(100), 100, seed=4)

    def test_rejects_negative_radius(self):
        with pytest.raises(ValueError):
            sampled_robustness_check(SINGLE_LAYER_09, [Q(0)], Q(-1), 10, seed=5)

    def test_deterministic_for_a_seed(self):
        rng = random.Random(304)
        net = rand_net(rng, outputs=3)
        v = rand_vector(rng, len(net[0][0]))
        first = sampled_robustness_check(net, v, Q(1, 2), 500, seed=42)
        second = sampled_robustness_check(net, v, Q(1, 2), 500, seed=42)
        assert first == second

    def test_certified_outputs_pass_the_sampler(self):
        # end-to-end smoke: pick an epsilon strictly inside the certified
        # margin and the sampler must agree (heavier corpus in acceptance)
        rng = random.Random(305)
        for _ in range(5):
            net = rand_net(rng, max_layers=3, max_width=5, outputs=3)
            bounds = gen_all_bounds(net, 4)
            v = rand_vector(rng, len(net[0][0]))
            out = apply_nn(net, v)
            x = argmax(out)
            rivals = [i for i in range(3) if i != x]
            gap = min(out[x] - out[i] for i in rivals)
            top = max(bounds.table[i][x] for i in rivals)
            if gap == 0 or top == 0:
                continue
            eps = gap / (2 * top)
            if certify(out, eps, bounds).certified:
                assert sampled_robustness_check(net, v, eps, 10_000, seed=6)
