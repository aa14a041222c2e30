import random
from pathlib import Path

import pytest

from linkedtrials import build_weight_table
from linkedtrials.synthetic import write_corpus

DATA = Path(__file__).parent / "data"

_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.skipped or report.failed:
        outcome = report.outcome
        prev = _acceptance.get(crit)
        # a criterion fails if any of its tests fails
        if prev != "failed":
            _acceptance[crit] = outcome


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        item.user_properties.append(("criterion", m.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_acceptance):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[_acceptance[crit]]
        terminalreporter.write_line(f"criterion {crit:>2}: {status}")


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def base_terms():
    return [line.strip() for line in (DATA / "base_terms.txt").read_text("utf-8").splitlines()
            if line.strip()]


@pytest.fixture(scope="session")
def fixture_weights(base_terms):
    return build_weight_table(base_terms, 2)


@pytest.fixture()
def corpus(tmp_path):
    directory = tmp_path / "trials"
    plan = write_corpus(directory, 25, seed=7)
    return directory, plan


def perturb(word, rng):
    """One random edit: substitute, delete, insert or swap a character."""
    if len(word) < 2:
        return word + rng.choice("aeiou")
    i = rng.randrange(len(word))
    op = rng.randrange(4)
    letters = "abcdefghijklmnopqrstuvwxyz"
    if op == 0:
        return word[:i] + rng.choice(letters) + word[i + 1:]
    if op == 1:
        return word[:i] + word[i + 1:]
    if op == 2:
        return word[:i] + rng.choice(letters) + word[i:]
    j = min(i + 1, len(word) - 1)
    chars = list(word)
    chars[i], chars[j] = chars[j], chars[i]
    return "".join(chars)


def random_corpus(rng, vocab, n):
    out = []
    for _ in range(n):
        words = rng.sample(vocab, rng.randint(1, 3))
        out.append(" ".join(words))
    return out


def noisy_copies(rng, strings, n):
    out = []
    for _ in range(n):
        s = rng.choice(strings)
        words = s.split()
        if rng.random() < 0.7:
            k = rng.randrange(len(words))
            words[k] = perturb(words[k], rng)
        if rng.random() < 0.3:
            rng.shuffle(words)
        out.append(" ".join(words))
    return out


@pytest.fixture(scope="session")
def vocab(base_terms):
    words = sorted({w.lower() for t in base_terms for w in t.replace(",", "").split()})
    return words


def make_join_corpus(seed, n_base, n_target, vocab):
    rng = random.Random(seed)
    base = random_corpus(rng, vocab, n_base)
    target = noisy_copies(rng, base, n_target // 2) + random_corpus(rng, vocab, n_target - n_target // 2)
    rng.shuffle(target)
    return base, target
