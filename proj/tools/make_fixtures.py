#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 RetroRank Contributors
"""Regenerates the checked-in files under fixtures/.

The output is deterministic; running the script twice yields identical files.
Usage: python3 tools/make_fixtures.py [fixtures_dir]
"""

import pathlib
import sys
from xml.sax.saxutils import escape

BASE_TS = 1388577600  # 2014-01-01 12:00:00 UTC


def stamp(offset_minutes):
    import datetime

    t = datetime.datetime.fromtimestamp(BASE_TS + offset_minutes * 60, datetime.timezone.utc)
    return t.strftime("%Y-%m-%d %H:%M:%S +0000")


def bug_xml(bug_id, title, status, priority, comments, resolution="FIXED"):
    """comments: list of (author, text)."""
    out = ["  <bug>", f"    <bug_id>{bug_id}</bug_id>"]
    out.append(f"    <creation_ts>{stamp(bug_id)}</creation_ts>")
    out.append(f"    <short_desc>{escape(title)}</short_desc>")
    out.append(f"    <bug_status>{status}</bug_status>")
    if status in ("RESOLVED", "VERIFIED", "CLOSED"):
        out.append(f"    <resolution>{resolution}</resolution>")
    out.append(f"    <priority>{priority}</priority>")
    for i, (author, text) in enumerate(comments):
        out.append('    <long_desc isprivate="0">')
        out.append(f"      <commentid>{bug_id * 100 + i}</commentid>")
        out.append(f"      <comment_count>{i}</comment_count>")
        out.append(f'      <who name="{author.split("@")[0]}">{author}</who>')
        out.append(f"      <bug_when>{stamp(bug_id + 90 * i)}</bug_when>")
        out.append(f"      <thetext>{escape(text)}</thetext>")
        out.append("    </long_desc>")
    out.append("  </bug>")
    return "\n".join(out)


def document(bugs):
    head = ('<?xml version="1.0" encoding="UTF-8" standalone="yes" ?>\n'
            '<bugzilla version="4.4.12" urlbase="https://bugs.example.org/" '
            'maintainer="admin@example.org">')
    return head + "\n" + "\n".join(bugs) + "\n</bugzilla>\n"


# --- mini-corpus ----------------------------------------------------------

# (title, component, symptom, artifact)
TOPICS = [
    ("ICE in tree vectorizer", "vectorizer", "internal compiler error", "a reduction loop"),
    ("Wrong code with strict aliasing", "alias oracle", "wrong result", "a union cast"),
    ("Bogus uninitialized warning", "warning machinery", "spurious Wmaybe-uninitialized", "a switch statement"),
    ("Template deduction fails for lambda", "template deducer", "deduction failure", "a generic lambda"),
    ("Linker error with LTO partitions", "lto streamer", "undefined reference", "an inline namespace"),
    ("Slow compile of large initializer", "constant folder", "compile time explosion", "a huge array initializer"),
    ("Missing diagnostic for narrowing", "narrowing check", "missing diagnostic", "a braced initializer"),
    ("Debug info lost after inlining", "dwarf emitter", "missing location list", "an inlined helper"),
    ("Sanitizer false positive on atomics", "tsan instrumentation", "false data race report", "an atomic counter"),
    ("ARM backend emits invalid assembly", "arm backend", "assembler rejection", "a vector shuffle"),
    ("Crash in OpenMP lowering", "omp lowering", "segmentation fault", "a collapsed parallel loop"),
    ("Header unit import hangs", "module mapper", "hang", "a header unit import"),
    ("Coroutine frame size miscomputed", "coroutine lowering", "stack corruption", "a suspended coroutine"),
    ("Stray warning for unused result", "attribute handling", "spurious Wunused-result", "a nodiscard call"),
    ("Regression in loop unrolling", "loop unroller", "performance regression", "a nested counted loop"),
    ("Format checker misses width", "format checker", "missing Wformat warning", "a printf width argument"),
    ("Constexpr evaluation rejects valid code", "constexpr evaluator", "bogus non-constant error", "a constexpr vector"),
    ("PCH mismatch after upgrade", "precompiled header loader", "checksum mismatch", "a stale precompiled header"),
    ("Bitfield store clobbers neighbor", "bitfield lowering", "memory clobber", "a packed bitfield struct"),
    ("Concepts diagnostic is unreadable", "concepts checker", "huge diagnostic", "a constrained overload"),
    ("Inline asm operand mismatch", "asm operand checker", "impossible constraint error", "an inline asm block"),
    ("Profile feedback ignored", "profile reader", "ignored profile", "an instrumented build"),
    ("Stack protector misses alloca", "stack protector", "unprotected frame", "an alloca buffer"),
    ("Ranges view fails to compile", "ranges library", "constraint failure", "a filter view"),
    ("Signed overflow folded wrongly", "overflow folder", "wrong folding", "a signed addition"),
    ("Static analyzer leak false positive", "static analyzer", "false leak report", "a realloc loop"),
    ("Preprocessor drops pragma", "preprocessor", "dropped pragma", "a pragma inside a macro"),
    ("Unaligned access on sparc", "sparc backend", "bus error", "an unaligned load"),
    ("Devirtualization breaks final class", "devirtualizer", "wrong call target", "a final class hierarchy"),
]

RESOLVED_STATUSES = ["RESOLVED", "VERIFIED", "CLOSED"]
OPEN_STATUSES = ["NEW", "ASSIGNED", "UNCONFIRMED", "REOPENED"]
AUTHORS = ["jakub@example.org", "rguenth@example.org", "redi@example.org", "msebor@example.org",
           "hubicka@example.org", "pinskia@example.org"]

PLANTED_BUG = 1030
PLANTED_QUERY = "segfault in register allocator spill code"


def mini_corpus():
    bugs = []
    resolved_ids = []
    for i, (title, component, symptom, artifact) in enumerate(TOPICS):
        bug_id = 1001 + i
        resolved = i % 5 not in (1, 3)
        bugs.append([bug_id, title, component, symptom, artifact, resolved])
    # 17 resolved topic bugs plus the planted bug: 18 of 30.
    assert sum(1 for b in bugs if b[5]) == 17

    xml_bugs = []
    for n, (bug_id, title, component, symptom, artifact, resolved) in enumerate(bugs):
        a = AUTHORS[n % len(AUTHORS)]
        b = AUTHORS[(n + 1) % len(AUTHORS)]
        c = AUTHORS[(n + 2) % len(AUTHORS)]
        description = (f"{title}. Compiling {artifact} with -O2 triggers a {symptom} in the {component}. "
                       f"Reduced testcase attached.")
        if resolved:
            status = RESOLVED_STATUSES[n % 3]
            comments = [
                (a, description),
                (b, f"Confirmed on trunk, the {symptom} with {artifact} is still unresolved. "
                    f"The {component} goes wrong when the operand is folded early."),
                (c, f"Patch committed to the {component}; the {symptom} is fixed on trunk and the "
                    f"branch. Added {artifact} as a regression test."),
                (a, f"Thanks, verified the {component} works with {artifact} now."),
            ]
        else:
            status = OPEN_STATUSES[n % 4]
            comments = [
                (a, description),
                (b, f"I can reproduce the {symptom} with {artifact}. Bisected to the {component} rewrite."),
                (c, f"Crash still happens with {artifact}; the {component} needs a proper redesign."),
                (a, f"Any update on the {component} issue? It blocks our release."),
            ]
        xml_bugs.append((bug_id, bug_xml(bug_id, title, status, f"P{1 + n % 4}", comments)))
        if resolved:
            resolved_ids.append(bug_id)

    # The planted pair: two lexically equal comments that differ only in the
    # verdict word, the negative one first in thread order.
    planted = [
        ("jakub@example.org",
         "Segfault in register allocator when compiling a spill heavy kernel with -O3 on x86_64. "
         "Backtrace points at the reload pass."),
        ("rguenth@example.org", "The segfault in the register allocator spill code is unresolved."),
        ("redi@example.org", "The segfault in the register allocator spill code is fixed."),
        ("jakub@example.org", "Thanks & closing; see <https://gcc.example.org/r12-345> for the commit. "
                              "Café builds are green again."),
    ]
    xml_bugs.append((PLANTED_BUG, bug_xml(PLANTED_BUG, "Segfault in register allocator spill code",
                                          "RESOLVED", "P2", planted)))
    resolved_ids.append(PLANTED_BUG)
    assert len(resolved_ids) == 18

    first = [x for bid, x in xml_bugs if bid < 1016]
    second = [x for bid, x in xml_bugs if bid >= 1016]
    goldset = [
        ("M1", PLANTED_QUERY, [f"mini:{PLANTED_BUG}:2"]),
        ("M2", "vectorizer internal compiler error reduction loop", ["mini:1001:2"]),
        ("M3", "uninitialized warning switch statement", ["mini:1003:2", "mini:1003:3"]),
        ("M4", "overflow folder wrong folding signed addition", ["mini:1025:2"]),
    ]
    return document(first), document(second), goldset


# --- reconstructed GCC bug 26494 -------------------------------------------

def gcc_26494():
    who = ["joseph@example.org", "pinskia@example.org", "manu@example.org", "jsm28@example.org"]
    texts = [
        "-Wimplicit-function-declaration is not an error with -pedantic-errors in C99 mode. "
        "An implicit declaration of a function should be diagnosed as a constraint violation.",
        "Confirmed. The implicit declaration warning is emitted but -pedantic-errors does not turn it into "
        "an error.",
        "The fix is to use pedwarn instead of warning for implicit declarations in C99 mode so "
        "-pedantic-errors upgrades the diagnostic. Patch posted to the list.",
        "Is this also a problem for -std=gnu99?",
        "gnu99 behaves the same, the implicit declaration path ignores the pedantic flag.",
        "There is a related report about implicit int, maybe handle both together.",
        "Implicit int is a separate issue, keep this one focused on function declarations.",
        "Ping, the patch still applies to trunk.",
        "Reviewed, looks mostly fine but the testsuite needs updating for the new pedwarn.",
        "Fixed on trunk: implicit function declarations are now a pedwarn in C99 mode, so "
        "-pedantic-errors makes them an error. IMO this is resolved, new tests added.",
        "Verified with a recent snapshot, the implicit declaration is now an error under -pedantic-errors.",
        "Closing as fixed.",
    ]
    comments = [(who[i % len(who)], t) for i, t in enumerate(texts)]
    return document([bug_xml(26494, "-Wimplicit-function-declaration should be a pedwarn in C99",
                             "RESOLVED", "P3", comments)])


# --- LibreOffice set around the text cell alignment query -----------------

FIG2_QUERY = "text cell alignment disappears"
FIG2_GOLD = ["libreoffice:34436:3", "libreoffice:33662:2", "libreoffice:34136:4", "libreoffice:32795:2"]


def fig2_corpus():
    w = ["kohei@example.org", "tml@example.org", "caolan@example.org", "mst@example.org"]

    def thread(texts):
        return [(w[i % len(w)], t) for i, t in enumerate(texts)]

    bugs = [
        bug_xml(34436, "Rotated text in cell loses alignment", "RESOLVED", "P3", thread([
            "Rotated text in a Calc cell loses its vertical alignment after saving.",
            "Reproduced with the attached spreadsheet.",
            "Only happens when the cell uses automatic row height.",
            "The alignment disappears only when the text is rotated and the cell has a border; removing "
            "the border keeps the text alignment. Fixed the layout code so both work, looks fine now.",
            "Thanks, confirmed in the nightly build.",
        ])),
        bug_xml(33662, "90 degree text alignment wrong in cells", "VERIFIED", "P2", thread([
            "Text rotated by 90 degrees ignores the cell alignment setting.",
            "Same in Impress tables.",
            "Handle the 90 degree case in the cell text alignment code: swap the horizontal and vertical "
            "alignment before drawing the rotated text. Patch pushed, resolved.",
            "Works for me in the daily build.",
        ])),
        bug_xml(34136, "Cell text disappears after changing alignment", "CLOSED", "P3", thread([
            "Cell text disappears when alignment is changed to justified.",
            "Cannot reproduce on Linux.",
            "Reproducible on Windows with the attached document.",
            "Bisected to the text rendering refactor.",
            "Fixed: the disappearing cell text was caused by a zero width alignment box. The fix is "
            "in master, great work.",
            "Verified fixed.",
        ])),
        bug_xml(32795, "Alignment toolbar does not update text cells", "RESOLVED", "P4", thread([
            "Alignment buttons do not update the text in selected cells.",
            "Confirmed, the toolbar state is stale.",
            "Confirmed the fix for the text alignment of cells; alignment no longer disappears after undo. "
            "Good catch, resolved.",
            "Thanks.",
        ])),
        bug_xml(34600, "Text cell alignment disappears", "NEW", "P3", thread([
            "Text cell alignment disappears after editing a rotated cell.",
            "Confirmed.",
        ])),
    ]
    distractors = [
        (35001, "Chart legend overlaps title", ["Chart legend overlaps the chart title.",
                                                "Legend position was wrong, fixed in the chart module."]),
        (35002, "Autofilter loses selection", ["Autofilter loses its selection after sort.",
                                               "The filter range is recomputed now; resolved."]),
        (35003, "Text import wizard crash", ["Text import wizard crashes on an empty file.",
                                             "Crash fixed by checking the stream size."]),
        (35004, "Conditional formatting slow", ["Conditional formatting makes scrolling slow.",
                                                "Cache added for rendered styles, scrolling is fine."]),
        (35005, "Cell comments hidden in print", ["Cell comments are hidden in print preview.",
                                                  "Print option now honors the comment display flag."]),
        (35006, "Paste special drops formats", ["Paste special drops number formats.",
                                                "Format transfer restored; resolved."]),
        (35007, "Sheet tab colors reset", ["Sheet tab colors reset on reload.",
                                           "Colors are saved in the document settings now."]),
        (35008, "Hyperlink in cell broken", ["A hyperlink in a cell cannot be opened.",
                                             "The link handler was fixed, works fine."]),
    ]
    for bug_id, title, texts in distractors:
        bugs.append(bug_xml(bug_id, title, "RESOLVED", "P3", thread(texts)))
    return document(bugs)


# --- published position table -------------------------------------------

POSITIONS = [
    # project, query_id, query, vsm, vsm_sa, vsm_tr, vsm_sa_tr, gold bug, gold comments
    ("gcc", "Q1", "60051 unify array domain", "1", "1", "1", "1", "59080", "C2"),
    ("gcc", "Q2", "60087 wsign compare warning", "12", "2", "2", "1", "9072", "C5"),
    ("gcc", "Q3", "61857 braced-init-list", "12,9", "5,3", "6,4", "2,1", "43875", "C3,C2"),
    ("gcc", "Q4", "61850 lambda bugs", "11", "4", "9", "2", "56915", "C2"),
    ("gcc", "Q5", "61852 implicit declaration", "8,12", "4,3", "6,4", "1,5", "26494", "C9,C2"),
    ("gcc", "Q6", "78000 wimplicit function declaration macro", "10,12,15", "6,5,2", "4,3,2", "3,1,2",
     "71613", "C6,C8,C9"),
    ("gcc", "Q7", "61151 regression lambda", "13", "6", "6", "4", "47049", "C11"),
    ("eclipse", "Q8", "483049 descriptor", "5", "4", "3", "3", "186451", "C1"),
    ("eclipse", "Q9", "420612 view menu disabled", "8", "5", "3", "3", "114569", "C6"),
    ("eclipse", "Q10", "493305 text disabled", "0", "0", "0", "0", "--", "--"),
    ("eclipse", "Q11", "494877 selection listener", "12,14,11,17", "6,5,4,2", "4,3,5,2", "2,1,3,4",
     "462760", "C12,C13,C17,C25"),
    ("eclipse", "Q12", "488771 illegal character parent", "5", "3", "4", "1", "416535", "C15"),
    ("eclipse", "Q13", "483849 application mpart", "8", "4", "3", "1", "463962", "C9"),
    ("libreoffice", "Q14", "97465 libreoffice gtk3", "3", "2", "2", "1", "97419", "C5"),
    ("libreoffice", "Q15", "99322 hard recalc", "6,9", "2,1", "3,2", "1,2", "89404", "C9,C12"),
    ("libreoffice", "Q16", "33622 rotate text", "0", "0", "0", "0", "--", "--"),
    ("libreoffice", "Q17", "97897 recalculate cell rotate", "6", "4", "3", "1", "68034", "C3"),
    ("libreoffice", "Q18", "106728 calc cell format", "14,10", "5,8", "6,3", "2,1", "47564", "C12,C7"),
    ("libreoffice", "Q19", "63567 spellcheck cell problem", "10", "3", "6", "2", "37092", "C2"),
    ("apache", "Q20", "46214 mod authorization host", "2", "1", "2", "1", "42995", "C2"),
    ("apache", "Q21", "33170 mod proxy", "4", "1", "2", "1", "18757", "C13"),
    ("apache", "Q22", "59019 undefined define issue", "5,8,7", "1,2,3", "2,3,5", "1,2,3", "35350", "C5,C6,C7"),
    ("apache", "Q23", "57177 terminated ill signal", "9", "4", "3", "2", "21036", "C1"),
    ("apache", "Q24", "33170 remote proxy error", "10,16,22", "4,6,3", "5,9,6", "2,1,3", "19188",
     "C12,C15,C24"),
    ("apache", "Q25", "59136 timeout sent", "8", "5", "3", "2", "58364", "C1"),
]


def positions_tsv():
    lines = ["# Rank positions of the goldset comments per configuration (0 = not retrieved).",
             "# Multi-valued cells list one position per gold comment, in gold order.",
             "\t".join(["project", "query_id", "query", "vsm", "vsm_sa", "vsm_tr", "vsm_sa_tr",
                        "gold_bug", "gold_comments"])]
    lines += ["\t".join(row) for row in POSITIONS]
    return "\n".join(lines) + "\n"


def write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


def main():
    root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).parent.parent / "fixtures")
    a, b, goldset = mini_corpus()
    write(root / "minicorpus" / "xml" / "bugs_1001_1015.xml", a)
    write(root / "minicorpus" / "xml" / "bugs_1016_1030.xml", b)
    write(root / "minicorpus" / "goldset.tsv",
          "".join(f"{qid}\t{q}\t{','.join(g)}\n" for qid, q, g in goldset))
    write(root / "gcc" / "xml" / "bug26494.xml", gcc_26494())
    write(root / "libreoffice" / "xml" / "text_cell_alignment.xml", fig2_corpus())
    write(root / "libreoffice" / "goldset.tsv", f"F2\t{FIG2_QUERY}\t{','.join(FIG2_GOLD)}\n")
    write(root / "eval1_positions.tsv", positions_tsv())


if __name__ == "__main__":
    main()
