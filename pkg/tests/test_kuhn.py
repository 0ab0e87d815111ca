import itertools

import numpy as np
import pytest

import boardbatch as bb
from boardbatch.games import kuhn_poker as kp

from oracles import kuhn_payoff, kuhn_sequences

CALL, BET, FOLD, CHECK = 0, 1, 2, 3
_NAME = {CALL: "call", BET: "bet", FOLD: "fold", CHECK: "check"}


def _core_with_hands(hands):
    return kp.Core(hands, (), (0, 0), 0, False, (0.0, 0.0), kp._OPEN_MASK)


def test_deal_is_two_distinct_cards_and_deterministic():
    k0 = bb.RngKey(123)
    a = bb.init("kuhn_poker", k0)
    b = bb.init("kuhn_poker", k0)
    assert a.core.hands == b.core.hands
    assert a.core.hands[0] != a.core.hands[1]
    assert all(c in (0, 1, 2) for c in a.core.hands)


def test_deals_cover_all_six_pairs():
    seen = {bb.init("kuhn_poker", bb.RngKey(s)).core.hands for s in range(300)}
    assert seen == set(itertools.permutations(range(3), 2))


def test_opening_and_facing_bet_masks():
    state = bb.init("kuhn_poker", bb.RngKey(1))
    assert set(np.flatnonzero(state.legal_action_mask)) == {BET, CHECK}
    after_bet = bb.step(state, BET)
    assert set(np.flatnonzero(after_bet.legal_action_mask)) == {CALL, FOLD}
    after_check = bb.step(state, CHECK)
    assert set(np.flatnonzero(after_check.legal_action_mask)) == {BET, CHECK}


def test_bet_call_showdown_pays_two():
    core = _core_with_hands((2, 1))  # A holds K, B holds Q
    core = kp._apply(core, BET)
    core = kp._apply(core, CALL)
    assert core.terminal
    assert core.rewards == (2.0, -2.0)


def test_check_bet_fold_pays_bettor_one():
    core = _core_with_hands((2, 1))
    for a in (CHECK, BET, FOLD):
        core = kp._apply(core, a)
    assert core.terminal
    assert core.rewards == (-1.0, 1.0)


def test_exhaustive_tree_matches_scenario_oracle():
    action_of = {"call": CALL, "bet": BET, "fold": FOLD, "check": CHECK}
    for hands in itertools.permutations(range(3), 2):
        for seq in kuhn_sequences():
            core = _core_with_hands(hands)
            for name in seq:
                assert (core.mask >> action_of[name]) & 1, (hands, seq, name)
                core = kp._apply(core, action_of[name])
            assert core.terminal
            expected_a = float(kuhn_payoff(hands, seq))
            assert core.rewards == (expected_a, -expected_a), (hands, seq)


def test_no_sequences_beyond_three_actions():
    # Walk the whole tree; depth never exceeds 3.
    def rec(core, depth):
        if core.terminal:
            assert depth <= 3
            return
        assert depth < 3
        mask = core.mask
        a = 0
        while mask:
            if mask & 1:
                rec(kp._apply(core, a), depth + 1)
            mask >>= 1
            a += 1

    rec(_core_with_hands((0, 1)), 0)


def test_observation_bits():
    state = bb.init("kuhn_poker", bb.RngKey(5))
    for p in range(2):
        obs = bb.observe(state, p)
        role = state.player_to_role[p]
        hand = state.core.hands[role]
        assert obs[hand] == 1.0
        assert obs[:3].sum() == 1.0
        # both players have committed nothing beyond the ante
        assert obs[3] == 1.0 and obs[4] == 0.0
        assert obs[5] == 1.0 and obs[6] == 0.0
    after_bet = bb.step(state, BET)
    bettor = state.current_player
    obs_bettor = bb.observe(after_bet, bettor)
    assert obs_bettor[3] == 0.0 and obs_bettor[4] == 1.0
    obs_other = bb.observe(after_bet, 1 - bettor)
    assert obs_other[5] == 0.0 and obs_other[6] == 1.0


def test_privacy_opponent_hand_hidden():
    # Two deals differing only in the opponent's card give identical
    # observations to the observer.
    a = kp._observe(_core_with_hands((2, 0)), 0)
    b = kp._observe(_core_with_hands((2, 1)), 0)
    np.testing.assert_array_equal(a, b)
    # while the two players' own observations differ
    c = kp._observe(_core_with_hands((2, 0)), 1)
    assert not np.array_equal(a, c)


def test_random_play_average_payoff_matches_tree_expectation():
    # Exact mean and variance of player A's payoff under uniform random
    # play, from the oracle tree (every decision point offers exactly two
    # actions, so a length-L sequence has probability 2^-L), then compared
    # against 1e5 sampled episodes within 3 standard errors.
    deals = list(itertools.permutations(range(3), 2))
    first_moment = 0.0
    second_moment = 0.0
    for hands in deals:
        for seq in kuhn_sequences():
            prob = (1 / len(deals)) * 0.5 ** len(seq)
            payoff = kuhn_payoff(hands, seq)
            first_moment += prob * payoff
            second_moment += prob * payoff * payoff
    variance = second_moment - first_moment**2

    key = bb.RngKey(9)
    n = 100_000
    total = 0.0
    for g in range(n):
        gkey = key.child(g)
        state = bb.init("kuhn_poker", gkey.child(0))
        role_of_a = [p for p in range(2) if state.player_to_role[p] == 0][0]
        t = 0
        while not state.terminated:
            t += 1
            legal = np.flatnonzero(state.legal_action_mask)
            state = bb.step(state, int(legal[gkey.child(t).randint(len(legal))]))
        total += float(state.rewards[role_of_a])
    mean = total / n
    se = (variance / n) ** 0.5
    assert abs(mean - first_moment) <= 3 * se, (mean, first_moment, se)
