import math
import random

import pytest

from oracles import cc_oracle, halstead_oracle
from gitrank.functions import extract_functions
from gitrank.lexer import Token, TokenKind, significant, tokenize
from gitrank.metrics import (
    count_sloc,
    cyclomatic_complexity,
    halstead_counts,
    halstead_volume,
    maintainability_index,
    measure_function,
)


def body_tokens(source):
    spans, diags = extract_functions(tokenize(source))
    assert diags == [] and len(spans) == 1
    return significant(spans[0].tokens)


# ---------------------------------------------------------------- complexity

def test_cc_branchless():
    assert cyclomatic_complexity(body_tokens("int f(){return 0;}")) == 1


def test_cc_condition_with_short_circuit():
    assert cyclomatic_complexity(body_tokens("int f(){if(a&&b)x();}")) == 3


def test_cc_loop_plus_nested_if():
    assert cyclomatic_complexity(body_tokens("int f(){for(;;){if(p)q();}}")) == 3


def test_cc_switch_cases_and_ternary():
    source = "int f(int v){switch(v){case 1: return 2; case 2: return v>0?1:0;} return 0;}"
    # switch itself adds nothing; two cases + one ternary
    assert cyclomatic_complexity(body_tokens(source)) == 4


def test_cc_decoys_do_not_count():
    source = 'int f(){ s = "if(x&&y)"; /* while(1)?a:b */ return 0; }'
    assert cyclomatic_complexity(body_tokens(source)) == 1


def test_cc_catch_counts():
    source = "int f(){ try { g(); } catch (...) { return 1; } return 0; }"
    assert cyclomatic_complexity(body_tokens(source)) == 2


def test_cc_matches_oracle_on_random_bodies():
    rng = random.Random(7)
    statements = [
        "a = b + c;",
        "if (a && b) { a = 1; }",
        "if (a || b) c(); else d();",
        "for (i = 0; i < n; i++) { total += i; }",
        "while (n > 0) { n--; }",
        "do { n++; } while (n < 9);",
        "x = p ? q : r;",
        "switch (k) { case 1: break; case 2: break; default: break; }",
        "/* if (fake && decoy) ? */",
        's = "while(1) || case ?";',
        "call(a, b);",
        "try { risky(); } catch (err) { handle(); }",
    ]
    for _ in range(200):
        body = "{\n" + "\n".join(rng.choice(statements) for _ in range(rng.randrange(0, 12))) + "\n}"
        source = "void f()\n" + body
        assert cyclomatic_complexity(body_tokens(source)) == cc_oracle(body)


# ------------------------------------------------------------------ halstead

def test_halstead_empty_body():
    # {} : N=2 operators, eta=1 distinct pair of braces? no: "{" and "}" differ
    counts = halstead_counts(significant(tokenize("{}")))
    assert (counts.total_operators, counts.total_operands) == (2, 0)
    assert (counts.distinct_operators, counts.distinct_operands) == (2, 0)
    assert counts.volume == pytest.approx(2.0)


def test_halstead_four_tokens():
    # {x;} -> N=4, eta=4 -> V = 4*log2(4) = 8
    assert halstead_volume(significant(tokenize("{x;}"))) == pytest.approx(8.0)


def test_halstead_single_token_volume_zero():
    lone = [Token(TokenKind.IDENTIFIER, "x", 1, 1)]
    assert halstead_volume(lone) == 0.0


def test_halstead_no_tokens():
    assert halstead_volume([]) == 0.0


def test_halstead_classification():
    counts = halstead_counts(significant(tokenize('{ return x + x * 2; }')))
    # operators: { return + * ; } ; operands: x x 2
    assert counts.total_operators == 6
    assert counts.total_operands == 3
    assert counts.distinct_operators == 6
    assert counts.distinct_operands == 2


def test_halstead_matches_oracle_on_random_bodies():
    rng = random.Random(99)
    statements = [
        "sum = sum + i;",
        "if (a < b) { swap(a, b); }",
        "printf(fmt, value);",
        "count++;",
        "ptr->field = 0;",
        "arr[i] = arr[i] << 2;",
        "return total;",
        "// trailing note",
        "/* block */",
        'label = "text";',
    ]
    for _ in range(200):
        body = "{ " + " ".join(rng.choice(statements) for _ in range(rng.randrange(0, 10))) + " }"
        expected = halstead_oracle(body)
        counts = halstead_counts(significant(tokenize(body)))
        assert counts.total_operators == expected["N1"]
        assert counts.total_operands == expected["N2"]
        assert counts.distinct_operators == expected["eta1"]
        assert counts.distinct_operands == expected["eta2"]
        assert counts.volume == pytest.approx(expected["volume"], abs=1e-12)


# ----------------------------------------------------------------------- mi

def test_mi_at_unit_inputs_is_171():
    assert maintainability_index(1, 0, 1) == 171.0


def test_mi_example_value():
    expected = 171.0 - 5.2 * math.log(8) - 0.23 * 1 - 16.2 * math.log(10)
    assert maintainability_index(8, 1, 10) == pytest.approx(expected, abs=1e-9)


def test_mi_rejects_degenerate_inputs():
    with pytest.raises(ValueError):
        maintainability_index(0, 0, 1)
    with pytest.raises(ValueError):
        maintainability_index(1, 0, 0)
    with pytest.raises(ValueError):
        maintainability_index(-3, 0, 5)
    with pytest.raises(ValueError):
        maintainability_index(1, -1, 1)


def test_mi_strictly_decreases_in_each_argument():
    rng = random.Random(4)
    for _ in range(100):
        v = rng.uniform(1, 5000)
        c = rng.uniform(0, 80)
        l = rng.uniform(1, 2000)
        base = maintainability_index(v, c, l)
        assert maintainability_index(v * 1.5, c, l) < base
        assert maintainability_index(v, c + 1, l) < base
        assert maintainability_index(v, c, l * 1.5) < base


# --------------------------------------------------------------------- sloc

def test_sloc_counts_only_code_lines():
    source = "int a;\n\n// only a comment\nint b;  // trailing\n/* block\n   spans */\nint c;\n"
    assert count_sloc(tokenize(source)) == 3


def test_sloc_empty_and_comment_only():
    assert count_sloc(tokenize("")) == 0
    assert count_sloc(tokenize("// nothing\n/* here */\n\n")) == 0


def test_sloc_multiline_literal_spans_lines():
    source = 'char *s = "one\\\ntwo";\n'
    # the spliced literal touches lines 1 and 2
    assert count_sloc(tokenize(source)) == 2


def test_sloc_braces_count_as_code():
    assert count_sloc(tokenize("int f()\n{\n}\n")) == 3


# ----------------------------------------------------------- per-function

def test_measure_function_bundle():
    source = "int f(int a)\n{\n  if (a && g(a)) { return 1; }\n  return 0;\n}\n"
    spans, _ = extract_functions(tokenize(source))
    metrics = measure_function(spans[0])
    assert metrics.name == "f"
    assert metrics.cyclomatic_complexity == 3
    assert metrics.lines == 5
    assert metrics.halstead_volume > 0
