"""Fixtures generating wire-format files the way the benchmark CLI writes them."""

import json

import pytest

CSV_HEADER = "test,order,K,n_elements,nl,ng,bytes,trials,elapsed_s,bandwidth_GBps"

# plausible mesh-test fit parameters per order (T0 seconds, Wmax bytes/s)
ORDER_FITS = {order: (2e-6 + 0.5e-6 * order, 7e11 + 1e10 * order)
              for order in range(1, 8)}


def mesh_counts(K, p):
    nl = K**3 * (p + 1) ** 3
    ng = (K * p + 1) ** 3
    return nl, ng


def gather_bytes(nl, ng):
    return 12 * nl + 8 * ng + 4 * (ng + 1)


def bs6_rows(orders=range(1, 8), k_range=range(2, 11), trials=20):
    rows = []
    for p in orders:
        t0, wmax = ORDER_FITS[p]
        for K in k_range:
            nl, ng = mesh_counts(K, p)
            b = gather_bytes(nl, ng)
            # mild deterministic wobble stands in for measurement noise
            t = (t0 + b / wmax) * (1 + 0.004 * ((K * 7 + p) % 5 - 2))
            elapsed = t * trials
            rows.append(
                f"bs6,{p},{K},,{nl},{ng},{b},{trials},"
                f"{elapsed:.17g},{b * trials / elapsed / 1e9:.17g}")
    return rows


@pytest.fixture
def bs6_csv(tmp_path):
    path = tmp_path / "bs6.csv"
    path.write_text(CSV_HEADER + "\n" + "\n".join(bs6_rows()) + "\n")
    return path


@pytest.fixture
def bs6_fit_json(tmp_path):
    entries = []
    for p, (t0, wmax) in ORDER_FITS.items():
        entries.append({"test": "bs6", "order": p, "T0_s": t0,
                        "Wmax_Bps": wmax, "B80_bytes": 4 * t0 * wmax,
                        "r2": 0.999, "n_points": 9, "clamped_T0": False})
    path = tmp_path / "bs6_fit.json"
    path.write_text(json.dumps(entries, indent=2))
    return path


@pytest.fixture
def bs1_csv(tmp_path):
    t0, wmax = 3e-6, 8e11
    rows = []
    for i in range(30):
        b = int(1e4 * (1.6 ** i))
        t = t0 + b / wmax
        rows.append(f"bs1,,,{b // 16},,,{b},20,{t * 20:.17g},{b / t / 1e9:.17g}")
    path = tmp_path / "bs1.csv"
    path.write_text(CSV_HEADER + "\n" + "\n".join(rows) + "\n")
    return path


@pytest.fixture
def bs1_fit_json(tmp_path):
    entry = {"test": "bs1", "order": None, "T0_s": 3e-6, "Wmax_Bps": 8e11,
             "B80_bytes": 4 * 3e-6 * 8e11, "r2": 1.0, "n_points": 30,
             "clamped_T0": False}
    path = tmp_path / "bs1_fit.json"
    path.write_text(json.dumps([entry]))
    return path
