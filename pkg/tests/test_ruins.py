from decimal import Decimal

import pytest

from optjudge.errors import TooLargeError
from optjudge.problems.ruins import (
    ORACLE_CELL_LIMIT,
    generate_ruins,
    judge_ruins,
    oracle_ruins,
    parse_instance,
)
from optjudge.verdicts import VerdictKind


def make_instance(width, height, values, h_lines=(), v_lines=()):
    lines = [f"{width} {height}"]
    lines.append(" ".join([str(len(h_lines))] + [str(y) for y in h_lines]))
    lines.append(" ".join([str(len(v_lines))] + [str(x) for x in v_lines]))
    lines.extend(" ".join(str(v) for v in row) for row in values)
    return "\n".join(lines) + "\n"


UNIT = make_instance(1, 1, [[5]])


def test_single_cell_accept():
    verdict = judge_ruins(UNIT, "1\n0 0 1 1\n")
    assert verdict.accepted
    assert verdict.score == Decimal(5)


def test_empty_solution_scores_zero():
    verdict = judge_ruins(UNIT, "0\n")
    assert verdict.accepted
    assert verdict.score == Decimal(0)


def test_score_is_item_value_not_cell_sum():
    # v[w][h] is the value of one w x h item; a 2x1 item is worth values[0][1],
    # not the sum of two cell entries.
    inst = make_instance(2, 1, [[3, 100]])
    verdict = judge_ruins(inst, "1\n0 0 2 1\n")
    assert verdict.score == Decimal(100)


def test_out_of_bounds_message():
    verdict = judge_ruins(UNIT, "1\n0 0 2 1\n")
    assert verdict.kind is VerdictKind.CONSTRAINT_VIOLATION
    assert verdict.message == "placement 0 out of bounds"


def test_non_positive_size_message():
    verdict = judge_ruins(UNIT, "1\n0 0 0 1\n")
    assert verdict.kind is VerdictKind.CONSTRAINT_VIOLATION
    assert verdict.message == "placement 0 has non-positive size 0x1"


def test_overlap_message_names_both_placements():
    inst = make_instance(2, 2, [[1, 2], [3, 4]])
    verdict = judge_ruins(inst, "2\n0 0 2 2\n1 1 1 1\n")
    assert verdict.kind is VerdictKind.CONSTRAINT_VIOLATION
    assert verdict.message == "placements 0,1 overlap"


def test_horizontal_line_violation_message():
    inst = make_instance(2, 2, [[1, 1], [1, 1]], h_lines=(1,))
    verdict = judge_ruins(inst, "1\n0 0 1 2\n")
    assert verdict.kind is VerdictKind.CONSTRAINT_VIOLATION
    assert verdict.message == "horizontal line 1 inside placement 0"


def test_vertical_line_violation_message():
    inst = make_instance(2, 2, [[1, 1], [1, 1]], v_lines=(1,))
    verdict = judge_ruins(inst, "1\n0 0 2 1\n")
    assert verdict.kind is VerdictKind.CONSTRAINT_VIOLATION
    assert verdict.message == "vertical line 1 inside placement 0"


def test_touching_a_forbidden_line_is_fine():
    inst = make_instance(2, 2, [[1, 1], [1, 1]], v_lines=(1,))
    verdict = judge_ruins(inst, "2\n0 0 1 2\n1 0 1 2\n")
    assert verdict.accepted


def test_garbage_solution_is_format_error():
    verdict = judge_ruins(UNIT, "definitely not numbers")
    assert verdict.kind is VerdictKind.FORMAT_ERROR
    assert verdict.message


def test_trailing_tokens_are_format_error():
    verdict = judge_ruins(UNIT, "1\n0 0 1 1\n7\n")
    assert verdict.kind is VerdictKind.FORMAT_ERROR


def test_oracle_area_values_tile_everything():
    values = [[(w + 1) * (h + 1) for w in range(3)] for h in range(3)]
    inst = parse_instance(make_instance(3, 3, values))
    best, witness = oracle_ruins(inst)
    assert best == 9
    assert judge_ruins(make_instance(3, 3, values), witness).score == Decimal(9)


def test_oracle_superadditive_prefers_one_big_item():
    values = [[((w + 1) * (h + 1)) ** 2 for w in range(3)] for h in range(3)]
    inst = parse_instance(make_instance(3, 3, values))
    best, _ = oracle_ruins(inst)
    assert best == 81


def test_oracle_all_zero_values():
    inst = parse_instance(make_instance(2, 2, [[0, 0], [0, 0]]))
    assert oracle_ruins(inst)[0] == 0


def test_oracle_only_unit_items_valuable():
    values = [[0, 0, 0], [0, 0, 0]]
    values[0][0] = 1
    inst = parse_instance(make_instance(3, 2, values))
    assert oracle_ruins(inst)[0] == 6


def test_oracle_rejects_large_grids():
    text = generate_ruins(0, 5, 4)
    with pytest.raises(TooLargeError):
        oracle_ruins(parse_instance(text))
    assert 5 * 4 > ORACLE_CELL_LIMIT


@pytest.mark.parametrize("seed", range(6))
def test_oracle_witness_is_accepted_and_optimal(seed):
    text = generate_ruins(seed, 3, 3, line_density=0.3)
    best, witness = oracle_ruins(parse_instance(text))
    verdict = judge_ruins(text, witness)
    assert verdict.accepted
    assert verdict.score == Decimal(best)


@pytest.mark.parametrize("seed", range(4))
def test_forbidden_line_never_helps(seed):
    import random

    rng = random.Random(f"ruins-mono:{seed}")
    values = [[rng.randint(0, 30) for _ in range(4)] for _ in range(2)]
    free = parse_instance(make_instance(4, 2, values))
    cut = parse_instance(make_instance(4, 2, values, v_lines=(2,)))
    assert oracle_ruins(cut)[0] <= oracle_ruins(free)[0]


@pytest.mark.parametrize("seed", range(4))
def test_full_cut_decomposes_the_optimum(seed):
    # A forbidden vertical line through the whole container splits the problem:
    # the two 2x2 halves share the same size-indexed value table.
    import random

    rng = random.Random(f"ruins-split:{seed}")
    values = [[rng.randint(0, 30) for _ in range(4)] for _ in range(2)]
    whole = parse_instance(make_instance(4, 2, values, v_lines=(2,)))
    half_values = [row[:2] for row in values]
    half = parse_instance(make_instance(2, 2, half_values))
    assert oracle_ruins(whole)[0] == 2 * oracle_ruins(half)[0]


def test_generator_is_deterministic():
    assert generate_ruins(8, 3, 3) == generate_ruins(8, 3, 3)
    assert generate_ruins(8, 3, 3) != generate_ruins(9, 3, 3)


def test_known_seed_optimum():
    best, _ = oracle_ruins(parse_instance(generate_ruins(8, 3, 3)))
    assert best == 285


def test_generated_text_parses_back():
    inst = parse_instance(generate_ruins(2, 4, 4, line_density=0.5))
    assert inst.width == 4 and inst.height == 4
    assert all(0 <= v <= 100 for row in inst.values for v in row)
    assert all(0 < y < 4 for y in inst.h_lines)
    assert all(0 < x < 4 for x in inst.v_lines)
