"""Command-line interface.

Subcommands mirror the library: ``family`` (generate/verify the cyclic
tetrahedron family and its ratio table), ``scheme`` (inspect scheme
files), ``fg`` (subgroup graphs), ``double`` (normal forms and the
fixed-element property run), ``iso`` (isometry classification), ``pres``
(presentations), ``audit`` (rank-inequality chains).

Reports are plain text with a stable field order; ``--machine`` switches
to line-oriented ``key=value`` records.  Randomised subcommands take a
``--seed`` (default from GEODOUBLE_SEED, else 0) which is echoed in the
report, and identical inputs plus seed produce byte-identical output.
Exit status: 0 all checks passed, 1 a check or domain error failed,
2 usage error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction

from . import construction, doubling, isometries, presentations, triangulation
from .freegroups import stallings_graph, word_from_str, word_to_str


class Report:
    def __init__(self, command: str):
        self.command = command
        self.rows: list[tuple] = []

    def kv(self, key: str, value) -> None:
        self.rows.append(("kv", key, value))

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.rows.append(("check", name, bool(ok), detail))

    def text(self, line: str) -> None:
        self.rows.append(("text", line))

    @property
    def failed(self) -> bool:
        return any(row[0] == "check" and not row[2] for row in self.rows)

    def render(self, machine: bool = False) -> str:
        lines = []
        if machine:
            lines.append(f"command={self.command}")
            for row in self.rows:
                if row[0] == "kv":
                    lines.append(f"{row[1]}={row[2]}")
                elif row[0] == "check":
                    lines.append(f"check.{row[1]}={'pass' if row[2] else 'fail'}")
        else:
            lines.append(f"command: {self.command}")
            for row in self.rows:
                if row[0] == "kv":
                    lines.append(f"{row[1]} = {row[2]}")
                elif row[0] == "check":
                    status = "PASS" if row[2] else "FAIL"
                    detail = f"  ({row[3]})" if row[3] else ""
                    lines.append(f"{status} {row[1]}{detail}")
                else:
                    lines.append(row[1])
        return "\n".join(lines) + "\n"


def _default_seed() -> int:
    return int(os.environ.get("GEODOUBLE_SEED", "0"))


def parse_complex_number(text: str) -> complex:
    """Parse complex literals written with i, e.g. ``1+2i``, ``-0.5i``, ``3``."""
    cleaned = text.strip().replace(" ", "")
    out = []
    for idx, ch in enumerate(cleaned):
        if ch == "i":
            prev = cleaned[idx - 1] if idx else ""
            if not (prev.isdigit() or prev == "."):
                out.append("1")
            out.append("j")
        else:
            out.append(ch)
    try:
        return complex("".join(out))
    except ValueError:
        raise ValueError(f"bad complex literal {text!r}") from None


def parse_matrix(text: str) -> list[list[complex]]:
    rows = [row for row in text.split(";") if row.strip()]
    if len(rows) != 2:
        raise ValueError("matrix needs two ';'-separated rows")
    out = []
    for row in rows:
        entries = [e for e in row.split(",") if e.strip()]
        if len(entries) != 2:
            raise ValueError("each matrix row needs two ','-separated entries")
        out.append([parse_complex_number(e) for e in entries])
    return out


def _gen_words(text: str, rank: int):
    return [word_from_str(tok, rank) for tok in text.split(",") if tok.strip()]


# -- family ------------------------------------------------------------------


def cmd_family_report(args) -> Report:
    rep = Report(f"family report --n-min {args.n_min} --n-max {args.n_max}")
    rep.kv("columns", "n bgenus rank_bound fix_rank ratio ratio_dec "
                      "cusped_fix cusped_bound cusped_ratio cusped_ratio_dec")
    strict = True
    for n in range(args.n_min, args.n_max + 1):
        if not construction.is_admissible(n):
            continue
        st = construction.family_stats(n)
        strict = strict and st.ratio_closed < 2 and st.ratio_cusped < 2
        if args.machine:
            rep.kv(f"row.{n}.boundary_genus", st.boundary_genus)
            rep.kv(f"row.{n}.rank_upper_closed", st.rank_upper_closed)
            rep.kv(f"row.{n}.fix_rank_closed", st.fix_rank_closed)
            rep.kv(f"row.{n}.ratio_closed", st.ratio_closed)
            rep.kv(f"row.{n}.fix_rank_cusped", st.fix_rank_cusped)
            rep.kv(f"row.{n}.rank_upper_cusped", f"<{st.rank_upper_cusped + 1}")
            rep.kv(f"row.{n}.ratio_cusped", st.ratio_cusped)
        else:
            rep.text(
                f"{n:5d} {st.boundary_genus:6d} {st.rank_upper_closed:10d} "
                f"{st.fix_rank_closed:8d} {str(st.ratio_closed):>9s} "
                f"{float(st.ratio_closed):.6f} {st.fix_rank_cusped:10d} "
                f"{'<' + str(st.rank_upper_cusped + 1):>12s} "
                f"{str(st.ratio_cusped):>12s} {float(st.ratio_cusped):.6f}")
    rep.check("all_ratios_below_two", strict)
    if args.epsilon is not None:
        eps = Fraction(args.epsilon)
        rep.kv("epsilon", eps)
        rep.kv("min_n_for_ratio", construction.min_n_for_ratio(eps))
    return rep


def _fmt(value) -> str:
    if isinstance(value, tuple):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    return str(value)


def cmd_family_verify(args) -> Report:
    rep = Report(f"family verify --n {args.n}")
    report = construction.verify_family(args.n)
    rep.kv("n", args.n)
    for chk in report.checks:
        rep.check(chk.name, chk.ok,
                  f"expected {_fmt(chk.expected)}, got {_fmt(chk.actual)}")
    return rep


# -- scheme ------------------------------------------------------------------


def _complex_summary(rep: Report, complex) -> None:
    rep.kv("tets", complex.scheme.tet_count)
    rep.kv("pairings", len(complex.scheme.pairings))
    rep.kv("closed", complex.closed)
    rep.kv("edge_classes", len(complex.edge_classes))
    rep.kv("edge_valences", ",".join(str(ec.valence) for ec in complex.edge_classes))
    rep.kv("vertex_classes", complex.vertex_class_count)
    rep.kv("orientable", complex.orientable)
    rep.kv("connected", complex.connected)
    for entry in triangulation.dihedral_report(complex):
        rep.kv(f"dihedral.{entry.edge_class}",
               f"valence={entry.valence} angle_deg={entry.angle_degrees} "
               f"admissible={entry.admissible}")
    if complex.closed:
        stats = triangulation.boundary_surfaces(complex)
        for comp in stats.components:
            rep.kv(f"boundary.{comp.vertex_class}",
                   f"F={comp.triangle_count} E={comp.edge_count} "
                   f"V={comp.vertex_count} chi={comp.euler_characteristic} "
                   f"orientable={comp.orientable} genus={comp.genus}")
        if complex.connected:
            genus, handles = triangulation.handle_structure(complex)
            rep.kv("handlebody_genus", genus)
            rep.kv("two_handles", handles)
    return None


def cmd_scheme_info(args) -> Report:
    rep = Report(f"scheme info {args.file}")
    with open(args.file, encoding="utf-8") as fh:
        scheme = triangulation.parse_scheme(fh.read())
    complex = triangulation.glue(scheme, require_closed=False)
    _complex_summary(rep, complex)
    return rep


def cmd_scheme_canon(args) -> Report:
    with open(args.file, encoding="utf-8") as fh:
        scheme = triangulation.parse_scheme(fh.read())
    sys.stdout.write(triangulation.render_scheme(scheme))
    return Report("scheme canon")


def cmd_scheme_family(args) -> Report:
    sys.stdout.write(triangulation.render_scheme(construction.family_scheme(args.n)))
    return Report("scheme family")


# -- fg ----------------------------------------------------------------------


def _graph_from_args(args):
    return stallings_graph(_gen_words(args.gens, args.rank), args.rank)


def cmd_fg(args) -> Report:
    rep = Report(f"fg {args.fg_cmd} --rank {args.rank} --gens {args.gens}")
    graph = _graph_from_args(args)
    if args.fg_cmd == "fold":
        rep.kv("vertices", graph.vertex_count)
        rep.kv("edges", graph.edge_count)
        for line in graph.export_edge_list().splitlines():
            rep.text(line)
    elif args.fg_cmd == "member":
        w = word_from_str(args.word, args.rank)
        rep.kv("word", word_to_str(w))
        rep.kv("member", graph.contains(w))
    elif args.fg_cmd == "rank":
        rep.kv("rank", graph.subgroup_rank())
    elif args.fg_cmd == "index":
        idx = graph.index()
        rep.kv("index", "infinite" if idx is None else idx)
    elif args.fg_cmd == "rep":
        w = word_from_str(args.word, args.rank)
        rep.kv("word", word_to_str(w))
        rep.kv("representative", word_to_str(graph.coset_representative(w)))
    return rep


# -- double ------------------------------------------------------------------


def cmd_double_nf(args) -> Report:
    rep = Report(f"double nf --rank {args.rank} --H {args.H} --word {args.word}")
    dbl = doubling.Double.from_generators(_gen_words(args.H, args.rank), args.rank)
    word = doubling.DoubleWord.from_str(args.word, args.rank)
    nf = dbl.normal_form(word)
    rep.kv("normal_form", str(nf))
    rep.kv("syllables", nf.syllable_count)
    rep.kv("tail", word_to_str(nf.tail))
    rep.kv("fixed_by_swap", dbl.is_fixed(word))
    return rep


def cmd_double_fixtest(args) -> Report:
    rep = Report(
        f"double fixtest --rank {args.rank} --H {args.H} "
        f"--samples {args.samples} --seed {args.seed}")
    dbl = doubling.Double.from_generators(_gen_words(args.H, args.rank), args.rank)
    rng = random.Random(args.seed)
    rep.kv("seed", args.seed)
    rep.kv("samples", args.samples)
    agree = 0
    fixed_count = 0
    for i in range(args.samples):
        in_h = rng.random() < 0.3
        w = doubling.random_double_word(rng, args.rank, dbl.subgroup, in_subgroup=in_h)
        nf = dbl.normal_form(w)
        fixed = dbl.is_fixed(w)
        zero = nf.syllable_count == 0
        valid = dbl.subgroup.contains(nf.tail) and all(
            not dbl.subgroup.contains(word) for _, word in nf.syllables)
        same_element = dbl.project(w) == dbl.project(dbl.nf_as_element(nf))
        if fixed == zero and valid and same_element:
            agree += 1
        if fixed:
            fixed_count += 1
    rep.kv("fixed_elements", fixed_count)
    rep.kv("agreements", f"{agree}/{args.samples}")
    rep.check("fixed_iff_zero_syllables", agree == args.samples)
    return rep


# -- iso ---------------------------------------------------------------------


def cmd_iso_classify(args) -> Report:
    rep = Report(f"iso classify --m {args.m}" + (" --rev" if args.rev else ""))
    g = isometries.Isometry.from_rows(parse_matrix(args.m), reversing=args.rev)
    if args.rev:
        fps = isometries.fixed_points(g, args.tol)
        rep.kv("reversing", True)
        rep.kv("fixed_set", fps.kind)
        if fps.kind == "circle":
            rep.kv("center", fps.center)
            rep.kv("radius", fps.radius)
        elif fps.kind == "line":
            rep.kv("line_point", fps.line_point)
            rep.kv("line_direction", fps.line_direction)
    else:
        cls = isometries.classify(g, args.tol)
        rep.kv("class", cls.value)
        fps = isometries.fixed_points(g, args.tol)
        rep.kv("fixed_set", fps.kind)
        if fps.points:
            rep.kv("fixed_points", " ".join(str(p) for p in fps.points))
    return rep


def cmd_iso_commute(args) -> Report:
    rep = Report(f"iso commute --m1 {args.m1} --m2 {args.m2}")
    g1 = isometries.Isometry.from_rows(parse_matrix(args.m1))
    g2 = isometries.Isometry.from_rows(parse_matrix(args.m2))
    com = isometries.commute(g1, g2, args.tol)
    rep.kv("commute", com)
    tag = isometries.commuting_criterion(g1, g2, args.tol)
    rep.kv("criterion", tag.value)
    rep.check("commute_iff_criterion", com == (tag is not isometries.CommutingCase.NONE))
    return rep


def cmd_iso_table(args) -> Report:
    preserving = not args.reversing
    rep = Report(
        f"iso table --{'preserving' if preserving else 'reversing'} "
        f"--{'closed' if args.closed else 'cusped'} "
        f"--{'phi2-id' if args.phi2_id else 'phi2-nonid'}")
    types = isometries.fix_type_table(preserving, args.phi2_id, args.closed)
    rep.kv("fix_types", " ".join(sorted(t.value for t in types)))
    return rep


# -- pres / audit --------------------------------------------------------------


def _presentation_from_args(args) -> presentations.Presentation:
    if args.scheme:
        with open(args.scheme, encoding="utf-8") as fh:
            scheme = triangulation.parse_scheme(fh.read())
        complex = triangulation.glue(scheme, require_closed=False)
        return presentations.presentation_from_complex(complex)
    relators = [word_from_str(tok, args.gens)
                for tok in (args.relators or "").split(",") if tok.strip()]
    return presentations.Presentation(args.gens, tuple(relators))


def cmd_pres(args) -> Report:
    rep = Report(f"pres {args.pres_cmd}")
    p = _presentation_from_args(args)
    rep.kv("presentation", str(p))
    if args.pres_cmd == "simplify":
        simplified = presentations.tietze_simplify(p)
        rep.kv("simplified", str(simplified))
        rep.kv("generators", simplified.generator_count)
        rep.kv("relators", len(simplified.relators))
    elif args.pres_cmd == "h1rank":
        inv = presentations.abelianization(p)
        rep.kv("h1_rank", inv.rank)
        rep.kv("torsion", ",".join(map(str, inv.torsion)) or "none")
    else:  # from-scheme
        rep.kv("generators", p.generator_count)
        rep.kv("relators", len(p.relators))
    return rep


def cmd_audit(args) -> Report:
    if args.sweep:
        rep = Report(f"audit sweep --g-max {args.g_max} --m-max {args.m_max} "
                     f"--l-max {args.l_max}")
        total = 0
        all_strict = True
        for case in presentations.enumerate_audit_cases(args.g_max, args.m_max,
                                                        args.l_max):
            report = presentations.rank_audit(case)
            total += 1
            all_strict = all_strict and report.strict
        rep.kv("cases", total)
        rep.check("all_final_inequalities_strict", all_strict)
        return rep
    case = presentations.AuditCase(
        genus=args.g, torus_pairs=args.m, single_circles=args.l,
        orientable=args.orientable, separating=args.separating,
        same_component=args.same_component)
    rep = Report(
        f"audit --g {args.g} --m {args.m} --l {args.l}"
        f"{' --orientable' if args.orientable else ' --non-orientable'}"
        f"{' --separating' if args.separating else ''}"
        f"{' --same-component' if args.same_component else ''}")
    report = presentations.rank_audit(case)
    for line in report.lines():
        rep.text(line)
    rep.check("final_inequality_strict", report.strict,
              f"margin {report.margin}")
    return rep


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geodouble")
    parser.add_argument("--machine", action="store_true",
                        help="emit line-oriented key=value output")
    sub = parser.add_subparsers(dest="command", required=True)

    fam = sub.add_parser("family", help="cyclic tetrahedron family")
    fam_sub = fam.add_subparsers(dest="family_cmd", required=True)
    fr = fam_sub.add_parser("report")
    fr.add_argument("--n-min", type=int, default=4)
    fr.add_argument("--n-max", type=int, default=13)
    fr.add_argument("--epsilon", type=str, default=None)
    fr.set_defaults(func=cmd_family_report)
    fv = fam_sub.add_parser("verify")
    fv.add_argument("--n", type=int, required=True)
    fv.set_defaults(func=cmd_family_verify)

    sch = sub.add_parser("scheme", help="scheme files")
    sch_sub = sch.add_subparsers(dest="scheme_cmd", required=True)
    si = sch_sub.add_parser("info")
    si.add_argument("file")
    si.set_defaults(func=cmd_scheme_info)
    sc = sch_sub.add_parser("canon")
    sc.add_argument("file")
    sc.set_defaults(func=cmd_scheme_canon)
    sf = sch_sub.add_parser("family")
    sf.add_argument("--n", type=int, required=True)
    sf.set_defaults(func=cmd_scheme_family)

    fg = sub.add_parser("fg", help="free-group subgroup graphs")
    fg_sub = fg.add_subparsers(dest="fg_cmd", required=True)
    for name, needs_word in (("fold", False), ("member", True), ("rank", False),
                             ("index", False), ("rep", True)):
        fp = fg_sub.add_parser(name)
        fp.add_argument("--rank", type=int, required=True)
        fp.add_argument("--gens", type=str, required=True,
                        help="comma-separated generator words")
        if needs_word:
            fp.add_argument("--word", type=str, required=True)
        fp.set_defaults(func=cmd_fg)

    dbl = sub.add_parser("double", help="amalgamated double")
    dbl_sub = dbl.add_subparsers(dest="double_cmd", required=True)
    dn = dbl_sub.add_parser("nf")
    dn.add_argument("--rank", type=int, required=True)
    dn.add_argument("--H", type=str, required=True)
    dn.add_argument("--word", type=str, required=True,
                    help="syllables like 'u:abA p:bb u:a'")
    dn.set_defaults(func=cmd_double_nf)
    df = dbl_sub.add_parser("fixtest")
    df.add_argument("--rank", type=int, required=True)
    df.add_argument("--H", type=str, required=True)
    df.add_argument("--samples", type=int, default=1000)
    df.add_argument("--seed", type=int, default=_default_seed())
    df.set_defaults(func=cmd_double_fixtest)

    iso = sub.add_parser("iso", help="isometry classification")
    iso_sub = iso.add_subparsers(dest="iso_cmd", required=True)
    ic = iso_sub.add_parser("classify")
    ic.add_argument("--m", type=str, required=True, help='matrix "a,b;c,d"')
    ic.add_argument("--rev", action="store_true")
    ic.add_argument("--tol", type=float, default=isometries.DEFAULT_TOL)
    ic.set_defaults(func=cmd_iso_classify)
    im = iso_sub.add_parser("commute")
    im.add_argument("--m1", type=str, required=True)
    im.add_argument("--m2", type=str, required=True)
    im.add_argument("--tol", type=float, default=isometries.DEFAULT_TOL)
    im.set_defaults(func=cmd_iso_commute)
    it = iso_sub.add_parser("table")
    group = it.add_mutually_exclusive_group(required=True)
    group.add_argument("--preserving", action="store_true")
    group.add_argument("--reversing", action="store_true")
    g2 = it.add_mutually_exclusive_group()
    g2.add_argument("--closed", dest="closed", action="store_true", default=True)
    g2.add_argument("--cusped", dest="closed", action="store_false")
    g3 = it.add_mutually_exclusive_group()
    g3.add_argument("--phi2-id", dest="phi2_id", action="store_true", default=False)
    g3.add_argument("--phi2-nonid", dest="phi2_id", action="store_false")
    it.set_defaults(func=cmd_iso_table)

    pres = sub.add_parser("pres", help="finite presentations")
    pres_sub = pres.add_subparsers(dest="pres_cmd", required=True)
    for name in ("from-scheme", "simplify", "h1rank"):
        pp = pres_sub.add_parser(name)
        if name == "from-scheme":
            pp.add_argument("scheme")
        else:
            pp.add_argument("--scheme", type=str, default=None)
            pp.add_argument("--gens", type=int, default=0)
            pp.add_argument("--relators", type=str, default="")
        pp.set_defaults(func=cmd_pres)

    aud = sub.add_parser("audit", help="rank-inequality audit")
    aud.add_argument("--g", type=int, default=0)
    aud.add_argument("--m", type=int, default=0)
    aud.add_argument("--l", type=int, default=0)
    aud.add_argument("--orientable", dest="orientable", action="store_true",
                     default=True)
    aud.add_argument("--non-orientable", dest="orientable", action="store_false")
    aud.add_argument("--separating", action="store_true")
    aud.add_argument("--same-component", dest="same_component", action="store_true")
    aud.add_argument("--sweep", action="store_true")
    aud.add_argument("--g-max", type=int, default=10)
    aud.add_argument("--m-max", type=int, default=5)
    aud.add_argument("--l-max", type=int, default=5)
    aud.set_defaults(func=cmd_audit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        report = args.func(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    out = report.render(machine=args.machine)
    if report.rows:
        sys.stdout.write(out)
    return 1 if report.failed else 0


if __name__ == "__main__":
    sys.exit(main())
