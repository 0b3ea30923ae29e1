# -*- coding: utf-8 -*-

from math import comb
from unittest import TestCase

from hypothesis import given
from hypothesis.strategies import integers

from ppmadc.constructions import (
    base_array, construction1, construction1_params, construction2,
    construction2_params, cyclic_index, cyclic_interval, cyclic_pda,
    cyclic_pda_params, extend_pda, lex_rank, lex_subsets, lex_unrank,
    man_pda, man_pda_params, transposed_man_pda_params)
from ppmadc.errors import OutOfRange, ParamError
from ppmadc.pda import STAR, parse_pda_text, transpose
from ppmadc.parameters import admissible_alphas
from ppmadc.verifier import check_l_cyclic, inspect_pda, verify_pda

from .fixtures import CYCLIC_5_1, CYCLIC_6_2_TEXT, SUBSETS_3_2


class CyclicIndexTestCase(TestCase):
    def test_values(self):
        self.assertEqual(cyclic_index(7, 6), 1)
        self.assertEqual(cyclic_index(6, 6), 6)
        self.assertEqual(cyclic_index(0, 6), 6)
        self.assertEqual(cyclic_interval(3, 3, 6), [3, 4, 5, 6])
        self.assertEqual(cyclic_interval(6, 1, 6), [6, 1])

        with self.assertRaises(ParamError):
            cyclic_index(3, 0)

    @given(integers(1, 50), integers(1, 100))
    def test_single_wrap(self, b, a):
        if a > 2 * b:
            a = a % (2 * b) + 1
        expected = a if a <= b else a - b
        self.assertEqual(cyclic_index(a, b), expected)


class LexRankTestCase(TestCase):
    def test_small_ranks(self):
        self.assertEqual(lex_rank((1, 2), 3), 1)
        self.assertEqual(lex_rank((1, 3), 3), 2)
        self.assertEqual(lex_rank((2, 3), 3), 3)
        self.assertEqual(lex_unrank(3, 3, 2), (2, 3))

    def test_rejects_invalid_subsets(self):
        for subset in [(), (2, 1), (1, 1), (0, 2), (1, 4)]:
            with self.assertRaises(OutOfRange):
                lex_rank(subset, 3)
        with self.assertRaises(OutOfRange):
            lex_unrank(4, 3, 2)

    @given(integers(1, 9), integers(1, 9))
    def test_ranks_follow_lex_order(self, F, t):
        t = min(t, F)
        subsets = lex_subsets(F, t)
        self.assertEqual([lex_rank(subset, F) for subset in subsets],
                         list(range(1, comb(F, t) + 1)))
        self.assertEqual(
            [lex_unrank(rank, F, t) for rank in range(1, comb(F, t) + 1)],
            subsets)


class ManPdaTestCase(TestCase):
    def test_three_batches(self):
        self.assertEqual(man_pda(3, 2), SUBSETS_3_2)
        self.assertEqual(transpose(man_pda(3, 2)), SUBSETS_3_2)
        self.assertEqual(verify_pda(transpose(man_pda(4, 1))).tuple,
                         (4, 4, 1, 6))

    def test_preconditions(self):
        with self.assertRaises(ParamError):
            man_pda(3, 0)
        with self.assertRaises(ParamError):
            man_pda(3, 3)

    def test_params_sweep(self):
        for F in range(2, 9):
            for alpha in range(1, F):
                array = man_pda(F, alpha)
                params = inspect_pda(array)
                self.assertEqual(params.tuple, man_pda_params(F, alpha).tuple)
                self.assertEqual(params.g, alpha + 1)

                params = inspect_pda(transpose(array))
                expected = transposed_man_pda_params(F, alpha)
                self.assertEqual(params.tuple, expected.tuple)
                self.assertEqual(params.g, expected.g)


class CyclicPdaTestCase(TestCase):
    def test_known_arrays(self):
        self.assertEqual(cyclic_pda(6, 2), parse_pda_text(CYCLIC_6_2_TEXT))
        self.assertEqual(cyclic_pda(5, 1), CYCLIC_5_1)

    def test_preconditions(self):
        with self.assertRaises(ParamError) as context:
            cyclic_pda(4, 2)
        self.assertIn("alpha < Q/2 violated", str(context.exception))

        with self.assertRaises(ParamError) as context:
            cyclic_pda(7, 2)
        self.assertIn("Q+alpha even violated", str(context.exception))

        for Q, alpha in [(1, 1), (6, 0)]:
            with self.assertRaises(ParamError):
                cyclic_pda(Q, alpha)

    def test_params_sweep(self):
        for Q in range(3, 21):
            for alpha in admissible_alphas("cyclic", Q):
                array = cyclic_pda(Q, alpha)
                expected = cyclic_pda_params(Q, alpha)
                params = inspect_pda(array)
                self.assertEqual(params, expected)
                self.assertTrue(check_l_cyclic(array, 1))
                for col in range(1, Q + 1):
                    self.assertEqual(list(array.star_rows(col)), sorted(
                        cyclic_interval(col, alpha - 1, Q)))


class ExtendPdaTestCase(TestCase):
    def test_base_array(self):
        array = base_array(3)
        self.assertEqual(verify_pda(array).tuple, (3, 3, 2, 1))
        self.assertEqual(array[2, 2], 1)
        self.assertIs(array[1, 2], STAR)

    def test_three_reducers_connect(self):
        extended = extend_pda(SUBSETS_3_2, 3)

        self.assertEqual(verify_pda(extended).tuple, (9, 9, 8, 1))
        self.assertEqual(extended, construction1(3, 2, 3))
        self.assertEqual(extended[3, 1], 1)
        self.assertEqual(extended[6, 4], 1)
        self.assertIs(extended[3, 4], STAR)
        self.assertEqual(extended.row(4),
                         (STAR,) * 5 + (1,) + (STAR,) * 3)

    def test_preconditions(self):
        with self.assertRaises(ParamError):
            extend_pda(SUBSETS_3_2, 1)

    def test_construction_params(self):
        self.assertEqual(verify_pda(construction1(4, 2, 2)).tuple,
                         (12, 8, 6, 4))
        self.assertEqual(construction1_params(4, 2, 2).tuple, (12, 8, 6, 4))

        self.assertEqual(verify_pda(construction2(6, 2, 6)).tuple,
                         (36, 36, 32, 12))
        self.assertEqual(verify_pda(construction2(8, 2, 2)).tuple,
                         (16, 16, 10, 24))
        self.assertEqual(construction2_params(8, 2, 2).tuple,
                         (16, 16, 10, 24))

    def test_construction_sweep(self):
        for K in range(2, 5):
            for F in range(2, 7):
                for alpha in range(1, F):
                    self.assertEqual(
                        verify_pda(construction1(F, alpha, K)).tuple,
                        construction1_params(F, alpha, K).tuple)
            for Q in range(3, 11):
                for alpha in admissible_alphas("cyclic", Q):
                    self.assertEqual(
                        verify_pda(construction2(Q, alpha, K)).tuple,
                        construction2_params(Q, alpha, K).tuple)
