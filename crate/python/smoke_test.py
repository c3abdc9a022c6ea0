"""Build the extension with cargo, import it, and exercise the API."""

import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_module(dest: Path) -> None:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "cdcodes-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libcdcodes_py.so"
    shutil.copy(lib, dest / "cdcodes_py.so")


def main() -> int:
    with tempfile.TemporaryDirectory() as tmp:
        build_module(Path(tmp))
        sys.path.insert(0, tmp)
        import cdcodes_py as cd

        f = cd.Field(29, 3, 1)
        assert (f.p, f.s, f.pi) == (29, 22, (-1, 4)), f
        assert f.label(1, -1) == 8
        assert f.unlabel(8) == (1, -1)
        assert f.weight(0) == 0 and f.distance(3, 3) == 0

        sed = cd.Field.from_pi(-1, 16, 4, 3)
        assert sed.beta_candidates(4) == [25, 30, 31, 36]

        code = cd.Code(cd.Field(61, 2), 10, beta=10, rows=4)
        assert (code.n, code.M, code.k) == (10, 6, 6)
        word = code.encode([1, 2, 3, 4, 5, 6])
        assert code.is_codeword(word)
        bad = list(word)
        bad[2] = (bad[2] + 5) % 61
        bad[7] = (bad[7] + 40) % 61
        out = code.decode(bad)
        assert out.status == "corrected" and out.errors == [(2, 5), (7, 40)], out.errors
        assert out.corrected == word

        again = cd.Code.from_toml(code.to_toml())
        assert again.to_toml() == code.to_toml()

        ranked = cd.search_codes(61)
        first = ranked[0]
        assert first.feasible and (first.t, first.n) == (4, 3), first
        assert cd.Code(first.field, first.n, first.beta).beta == first.beta

        report = cd.simulate(cd.Code(cd.Field(61, 2), 10, beta=10), errors=1, trials=2000, seed=3)
        assert Fraction(*report.success_rate) == 1 and report.rng == "chacha8"

        checks = cd.verify_paper()
        odd = [(c.example, c.verdict) for c in checks if c.verdict != "match"]
        assert odd == [("4.3", "corrected-match"), ("4.7", "mismatch")], odd

        try:
            cd.Field(30, 3)
        except ValueError:
            pass
        else:
            raise AssertionError("composite p accepted")

    print("smoke test ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
