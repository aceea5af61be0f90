"""End-to-end checks of the pimsim command line: exit codes, report
contents, schema validity and determinism."""

import argparse
import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

FAILURES = []


def check(cond, what):
    if not cond:
        FAILURES.append(what)
        print(f"FAIL {what}")


def load_schemas(directory):
    schemas = {}
    registry = Registry()
    for path in Path(directory).glob("*.schema.json"):
        doc = json.loads(path.read_text())
        schemas[path.name.split(".")[0]] = doc
        registry = registry.with_resource(doc["$id"], Resource.from_contents(doc))
    return schemas, registry


class Cli:
    def __init__(self, exe, schemas, registry):
        self.exe = exe
        self.schemas = schemas
        self.registry = registry

    def __call__(self, *args, env=None, stdin=None):
        full_env = dict(os.environ)
        full_env.pop("PIMSIM_DPU_CONFIG", None)
        if env:
            full_env.update(env)
        return subprocess.run([self.exe, *args], capture_output=True, text=True, env=full_env, timeout=300)

    def json(self, schema, *args, expect=0, **kw):
        r = self(*args, **kw)
        check(r.returncode == expect, f"{' '.join(args)}: exit {r.returncode}, stderr {r.stderr.strip()}")
        try:
            doc = json.loads(r.stdout)
        except json.JSONDecodeError:
            check(False, f"{' '.join(args)}: stdout is not JSON")
            return {}
        validator = jsonschema.Draft202012Validator(self.schemas[schema], registry=self.registry)
        errors = list(validator.iter_errors(doc))
        check(not errors, f"{' '.join(args)}: schema errors {[e.message for e in errors[:3]]}")
        return doc


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--schemas", required=True)
    opts = ap.parse_args()
    schemas, registry = load_schemas(opts.schemas)
    cli = Cli(opts.cli, schemas, registry)

    # run: uniform superposition, no reconstruction
    doc = cli.json("run", "run", "--bench", "qrng:4", "--engine", "pim", "--passes", "gm,rs")
    check(doc.get("probabilities") == ["1/16"] * 16, "qrng:4 probabilities are 1/16")
    check(doc["cost"]["phases"][3]["units"] == 0, "qrng:4 Recon. is zero")
    check(doc["trace"]["totals"]["recon_ops"] == 0, "qrng:4 recon_ops is zero")

    # run: oracle BV, data bits 111 carry all the weight
    doc = cli.json("run", "run", "--bench", "bv:4", "--secret", "111", "--engine", "oracle")
    probs = doc["probabilities"]
    check(abs(sum(p for j, p in enumerate(probs) if j & 0b111 == 0b111) - 1.0) < 1e-9, "bv:4 oracle data bits 111")

    # run: VP over 4 DPUs matches the unpartitioned run
    vp = cli.json("run", "run", "--bench", "qrng:16", "--engine", "pim", "--passes", "gm,rs,vp", "--dpus", "4")
    flat = cli.json("run", "run", "--bench", "qrng:16", "--engine", "pim", "--passes", "gm,rs")
    check(len(vp["plan"]["components"]) == 16, "qrng:16 has 16 components")
    check(vp["plan"]["dpus_used"] == 4, "qrng:16 uses 4 DPUs")
    check(all(len(d["components"]) == 4 for d in vp["trace"]["dpus"]), "each DPU holds four qubits")
    check(vp["trace"]["totals"]["recon_ops"] == 2 ** 16, "reconstruction performed")
    check(vp["probabilities"] == flat["probabilities"], "vp and non-vp probabilities agree")

    # pass variations never change probabilities
    base = cli.json("run", "run", "--bench", "hs:3", "--passes", "none")["probabilities"]
    for passes in ["gm", "rs", "gm,rs", "gm,rs,vp", "vp"]:
        other = cli.json("run", "run", "--bench", "hs:3", "--passes", passes, "--dpus", "2")["probabilities"]
        check(other == base, f"hs:3 probabilities unchanged under {passes}")

    # determinism, including sampling
    a = cli("run", "--bench", "bb:10", "--passes", "gm,rs,vp", "--dpus", "3", "--samples", "50", "--seed", "9")
    b = cli("run", "--bench", "bb:10", "--passes", "gm,rs,vp", "--dpus", "3", "--samples", "50", "--seed", "9")
    check(a.returncode == 0 and a.stdout == b.stdout, "run output is deterministic")
    samples = json.loads(a.stdout)["samples"]
    check(sum(samples["counts"].values()) == 50, "sample counts add up")
    r = cli("run", "--bench", "qrng:2", "--samples", "5")
    check(r.returncode == 1 and "seed" in r.stderr, "sampling without a seed is refused")

    # csv and text formats
    r = cli("run", "--bench", "qrng:4", "--passes", "gm,rs,vp", "--dpus", "2", "--format", "csv")
    lines = r.stdout.strip().splitlines()
    check(lines[0] == "dpu_id,phase,bytes,int_ops,float_ops,modeled_units", "csv header")
    check(lines[-1].startswith("host,Recon.,"), "csv host Recon. row")
    r = cli("run", "--bench", "qrng:4", "--format", "text")
    for phase in ["C-to-D Tran.", "Comp.", "D-to-C Tran.", "Recon."]:
        check(phase in r.stdout, f"text report names {phase}")

    # transpile
    doc = cli.json("transpile", "transpile", "--bench", "bv:4", "--passes", "gm")
    check(doc["stats"]["quantization_k"] == 2, "bv:4 quantization_k = 2")
    doc = cli.json("transpile", "transpile", "--bench", "xor:8", "--passes", "rs")
    steps = doc["programs"][0]["steps"]
    check(len(steps) == 7 and all(s["type"] == "PermApply" for s in steps), "xor:8 lowers to 7 PermApply")
    check(doc["stats"]["int_matrix_steps"] == 0, "xor:8 has no matrices")
    doc = cli.json("transpile", "transpile", "--bench", "qrng:16", "--passes", "vp")
    check(doc["stats"]["component_count"] == 16, "qrng:16 has 16 components")

    # verify
    doc = cli.json("verify", "verify", "--bench", "bv:8", "--passes", "gm,rs", "--tol", "1e-9")
    check(doc.get("pass") is True, "bv:8 verifies")
    doc = cli.json("verify", "verify", "--bench", "xor:8", "--passes", "rs", "--tol", "0")
    check(doc.get("pass") is True and doc["max_deviation"] == 0, "xor:8 verifies exactly")

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        good = json.loads(cli("run", "--bench", "bv:4", "--passes", "gm,rs").stdout)
        golden = tmp / "bv4.json"
        golden.write_text(json.dumps(good))
        doc = cli.json("verify", "verify", "--bench", "bv:4", "--passes", "gm,rs", "--golden", str(golden))
        check(doc.get("pass") is True, "golden file matches")
        corrupted = dict(good)
        corrupted["state"] = dict(good["state"])
        nums = [list(p) for p in good["state"]["nums"]]
        nums[0], nums[-1] = nums[-1], nums[0]
        nums[1] = [nums[1][0] + 1, nums[1][1]]
        corrupted["state"]["nums"] = nums
        bad = tmp / "bad.json"
        bad.write_text(json.dumps(corrupted))
        doc = cli.json("verify", "verify", "--bench", "bv:4", "--passes", "gm,rs", "--golden", str(bad), expect=4)
        check(doc.get("pass") is False, "corrupted golden fails")

        # parse errors: exit 1 with a located diagnostic on stderr
        src = tmp / "bad.qasm"
        src.write_text("OPENQASM 2.0;\nqreg q[2];\nrx(pi/3) q[0];\n")
        r = cli("run", "--input", str(src))
        check(r.returncode == 1, "bad qasm exits 1")
        check("3:" in r.stderr and "angle outside supported domain" in r.stderr, "diagnostic names the angle")

        ok = tmp / "bell.qasm"
        ok.write_text('OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n')
        doc = cli.json("run", "run", "--input", str(ok), "--passes", "gm,rs")
        check(doc["probabilities"] == ["1/2", "0/1", "0/1", "1/2"], "bell state from qasm")
        r = cli("run", "--input", str(tmp / "bell.txt"))
        check(r.returncode == 1, "non-.qasm input refused")

        # emit then re-run the emitted text
        text = cli("emit", "--bench", "edc:4").stdout
        emitted = tmp / "edc.qasm"
        emitted.write_text(text)
        a = json.loads(cli("run", "--bench", "edc:4").stdout)["probabilities"]
        b = json.loads(cli("run", "--input", str(emitted)).stdout)["probabilities"]
        check(a == b, "emitted qasm runs identically")

        # contract violation: T on a superposed qubit
        t = tmp / "t.qasm"
        t.write_text("OPENQASM 2.0;\nqreg q[1];\nh q[0];\nt q[0];\n")
        r = cli("run", "--input", str(t))
        check(r.returncode == 3, f"T on a superposition exits 3 (got {r.returncode})")

        # config override through the environment
        cfg = tmp / "cfg.json"
        cfg.write_text(json.dumps({"float_emu_cost": 64, "return_probabilities_only": True}))
        jsonschema.validate(json.loads(cfg.read_text()), schemas["dpu_config"])
        doc = cli.json("run", "run", "--bench", "bv:4", env={"PIMSIM_DPU_CONFIG": str(cfg)})
        check(doc["trace"]["dpus"][0]["d2c_bytes"] == 128, "config override halves D-to-C")
        cfg.write_text(json.dumps({"no_such_key": 1}))
        r = cli("run", "--bench", "bv:4", env={"PIMSIM_DPU_CONFIG": str(cfg)})
        check(r.returncode == 1, "unknown config key refused")

    # capacity
    r = cli("run", "--bench", "qrng:23", "--passes", "gm")
    check(r.returncode == 2 and "MRAM" in r.stderr, "23-qubit state exits 2")
    r = cli("run", "--bench", "qrng:4", "--dpus", "3000")
    check(r.returncode in (1, 2), "too many DPUs refused")

    # usage errors
    for args in [["run"], ["run", "--bench", "qft:4"], ["run", "--bench", "bv:x"], ["bogus"],
                 ["run", "--bench", "qrng:4", "--engine", "gpu"], ["run", "--bench", "qrng:4", "--passes", "zz"],
                 ["run", "--bench", "qrng:4", "--engine", "oracle", "--passes", "vp"]]:
        r = cli(*args)
        check(r.returncode == 1, f"{' '.join(args)} exits 1 (got {r.returncode})")

    if FAILURES:
        print(f"{len(FAILURES)} CLI check(s) failed")
        return 1
    print("all CLI checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
