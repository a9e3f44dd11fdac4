"""Experiment harness shared by the CLI and the acceptance tests."""
from __future__ import annotations

import hashlib
import random
import time
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .insdel_code import InsdelCodeParams, half_error_weight, inner_code, insdel_decode, insdel_encode, word_from_guesses
from .construction import SyncString
from .indexing import DECODER_MODES, ERROR_FREE, count_misdecodings, decode, misdecoding_bound, simulate_channel
from .rs import DecodeFailure

SCHEMA_VERSION = 1

INDEXING_COLUMNS = (
    "schema", "decoder", "n", "eps", "delta", "adversary", "mode", "trial", "seed",
    "d_i", "d_r", "transmitted", "misdecodings", "error_free_violations",
    "bound", "bound_respected", "half_errors", "half_error_bound", "half_error_respected",
)
CODEC_COLUMNS = (
    "schema", "decoder", "n", "delta", "adversary", "mode", "trial", "seed",
    "d_i", "d_r", "misdecodings", "half_errors", "radius", "recovered", "failure",
)


def trial_seed(master: int, *key) -> int:
    """64-bit per-trial seed derived from the master seed and a counter key."""
    text = ":".join(str(x) for x in (master, *key))
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "big")


@dataclass(frozen=True)
class IndexingTrial:
    decoder: str
    delta: Fraction
    adversary: str
    mode: str
    trial: int
    seed: int
    beta: Fraction | None = None


def run_indexing_trial(s: SyncString, spec: IndexingTrial, timing: bool = False) -> dict:
    rng = random.Random(spec.seed)
    t = simulate_channel(s, spec.adversary, spec.delta, spec.mode, rng)
    start = time.perf_counter()
    guesses = decode(spec.decoder, s.body, t.received, eps=s.eps, beta=spec.beta)
    elapsed = time.perf_counter() - start
    rep = count_misdecodings(t, guesses)
    bound = misdecoding_bound(spec.decoder, len(s), s.eps, t.insertions, t.deletions, spec.beta, s.property)
    # inner symbol of position i is its own index; inserted symbols carry 0
    tagged = [(o or 0, c) for o, c in zip(t.origin, t.received)]
    word = word_from_guesses(tagged, guesses, len(s))
    he = half_error_weight(word, range(1, len(s) + 1))
    actions = t.insertions + t.deletions
    he_bound = actions + (1 if spec.decoder in ERROR_FREE else 2) * rep.misdecodings
    row = {
        "schema": SCHEMA_VERSION,
        "decoder": spec.decoder,
        "n": len(s),
        "eps": str(s.eps),
        "delta": str(spec.delta),
        "adversary": spec.adversary,
        "mode": spec.mode,
        "trial": spec.trial,
        "seed": spec.seed,
        "d_i": t.insertions,
        "d_r": t.deletions,
        "transmitted": rep.transmitted_total,
        "misdecodings": rep.misdecodings,
        "error_free_violations": rep.error_free_violations,
        "bound": ("<" if bound.strict else "<=") + " " + str(bound.value),
        "bound_respected": bound.holds(rep.misdecodings)
        and (spec.decoder not in ERROR_FREE or rep.error_free_violations == 0),
        "half_errors": he,
        "half_error_bound": he_bound,
        "half_error_respected": he <= he_bound,
    }
    if timing:
        row["wall_ms"] = round(elapsed * 1000, 3)
    return row


def indexing_trials(
    decoders: Sequence[str],
    deltas: Sequence[Fraction],
    adversaries: Sequence[str],
    modes: Sequence[str],
    trials: int,
    master_seed: int,
    beta: Fraction | None = None,
) -> list[IndexingTrial]:
    out = []
    for dec in decoders:
        for delta in deltas:
            for adv in adversaries:
                for mode in modes:
                    if mode not in DECODER_MODES[dec]:
                        continue
                    for k in range(trials):
                        seed = trial_seed(master_seed, dec, delta, adv, mode, k)
                        out.append(IndexingTrial(dec, Fraction(delta), adv, mode, k, seed, beta if dec == "global" else None))
    return out


def _run_one(args):
    s, spec, timing = args
    return run_indexing_trial(s, spec, timing)


def run_indexing(s: SyncString, specs: Iterable[IndexingTrial], jobs: int = 1, timing: bool = False) -> list[dict]:
    """Rows in the order of ``specs`` no matter how many workers run them."""
    work = [(s, spec, timing) for spec in specs]
    if jobs <= 1:
        return [_run_one(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_one, work, chunksize=4))


def aggregate(rows: Sequence[dict]) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "rows": len(rows),
        "max_misdecodings": max((r["misdecodings"] for r in rows), default=0),
        "max_error_free_violations": max((r["error_free_violations"] for r in rows), default=0),
        "all_bounds_respected": all(r["bound_respected"] for r in rows),
        "all_half_error_bounds_respected": all(r["half_error_respected"] for r in rows),
    }


# ---------------------------------------------------------------------------
# end-to-end code trials


def run_codec_trial(params: InsdelCodeParams, s: SyncString, adversary: str, mode: str, trial: int, seed: int, code=None) -> dict:
    code = code or inner_code(params)
    rng = random.Random(seed)
    msg = [rng.randrange(params.q_inner) for _ in range(params.k_msg)]
    sent = insdel_encode(msg, params, s, code)
    t = simulate_channel(s, adversary, params.delta, mode, rng)
    received = [sent[o - 1] if o is not None else (rng.randrange(params.q_inner), c) for o, c in zip(t.origin, t.received)]
    guesses = decode(params.decoder, s.body, t.received, eps=params.sync_eps, beta=params.beta)
    rep = count_misdecodings(t, guesses)
    he = half_error_weight(word_from_guesses(received, guesses, params.n), [p[0] for p in sent])
    failure = ""
    try:
        recovered = insdel_decode(received, params, s, code) == msg
        if not recovered:
            failure = "wrong message"
    except DecodeFailure as e:
        recovered = False
        failure = str(e)
    return {
        "schema": SCHEMA_VERSION,
        "decoder": params.decoder,
        "n": params.n,
        "delta": str(params.delta),
        "adversary": adversary,
        "mode": mode,
        "trial": trial,
        "seed": seed,
        "d_i": t.insertions,
        "d_r": t.deletions,
        "misdecodings": rep.misdecodings,
        "half_errors": he,
        "radius": params.radius,
        "recovered": recovered,
        "failure": failure,
    }


def run_codec(params: InsdelCodeParams, s: SyncString, adversary: str, mode: str, trials: int, master_seed: int) -> list[dict]:
    code = inner_code(params)
    return [
        run_codec_trial(params, s, adversary, mode, k, trial_seed(master_seed, "codec", adversary, mode, k), code)
        for k in range(trials)
    ]
