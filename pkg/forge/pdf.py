from io import BytesIO
from datetime import datetime

from reportlab.lib import colors
from reportlab.lib.pagesizes import A4, landscape
from reportlab.lib.styles import getSampleStyleSheet
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

PASS_COLOUR = colors.Color(0.85, 0.95, 0.85)
FAIL_COLOUR = colors.Color(0.98, 0.85, 0.85)


def _grid_style(rows) -> TableStyle:
    return TableStyle([
        ("BACKGROUND", (0, 0), (-1, 0), colors.lightgrey),
        ("GRID", (0, 0), (-1, -1), 0.5, colors.grey),
        ("VALIGN", (0, 0), (-1, -1), "MIDDLE"),
        ("FONTSIZE", (0, 0), (-1, -1), 8),
    ] + rows)


def _sdim(pair) -> str:
    if not pair:
        return "-"
    return f"{pair[0]}|{pair[1]}"


def _orbit(observed) -> str:
    if "orbit" not in observed:
        return "-"
    return f"{observed['orbit']} ({observed['orbit_ordered']} ordered)"


def build_tables_report(results, caps=None) -> bytes:
    """One row per expectation entry: family, p, observed values and the verdict."""
    buffer = BytesIO()
    doc = SimpleDocTemplate(buffer, pagesize=landscape(A4), leftMargin=24, rightMargin=24, topMargin=24, bottomMargin=24)
    styles = getSampleStyleSheet()
    small = styles["Normal"].clone("NormalSmall")
    small.fontSize = 7
    small.leading = 9
    story = [Paragraph("Expectation tables", styles["Title"])]
    passed = sum(1 for r in results if r.passed)
    summary = f"{passed} of {len(results)} entries pass; generated {datetime.now():%Y-%m-%d %H:%M}"
    if caps is not None:
        summary += f"; dim cap {caps.dim_cap}, height cap {caps.height_cap}"
    story.append(Paragraph(summary, styles["Normal"]))
    story.append(Spacer(1, 12))

    data = [["Family", "p", "sdim", "Core", "Orbit", "HW", "Result", "Source"]]
    highlight = []
    for k, r in enumerate(results, start=1):
        o = r.observed
        verdict = "pass" if r.passed else Paragraph("; ".join(r.failures), small)
        data.append([
            r.family,
            str(r.p),
            _sdim(o.get("sdim")),
            _sdim(o.get("core_sdim")),
            _orbit(o),
            str(o.get("highest_weights", "-")),
            verdict,
            Paragraph(r.source, small),
        ])
        highlight.append(("BACKGROUND", (0, k), (-1, k), PASS_COLOUR if r.passed else FAIL_COLOUR))

    table = Table(data, repeatRows=1, colWidths=[60, 24, 50, 50, 36, 28, 200, 330])
    table.setStyle(_grid_style(highlight))
    story.append(table)
    doc.build(story)
    pdf = buffer.getvalue()
    buffer.close()
    return pdf


def build_orbit_report(orbit, title: str = "Reflection orbit") -> bytes:
    """The rectangle table of an orbit: member m, node k -> reached member."""
    buffer = BytesIO()
    doc = SimpleDocTemplate(buffer, pagesize=A4, leftMargin=24, rightMargin=24, topMargin=24, bottomMargin=24)
    styles = getSampleStyleSheet()
    story = [Paragraph(title, styles["Title"])]
    if orbit.sdim:
        summary = f"sdim {_sdim(orbit.sdim)}, {len(orbit)} inequivalent Cartan matrices, {orbit.ordered_count} node-ordered"
        story.append(Paragraph(summary, styles["Normal"]))
    story.append(Spacer(1, 12))
    rectangle = orbit.rectangle()
    n = len(rectangle[0]) if rectangle else 0
    data = [[""] + [str(k + 1) for k in range(n)]]
    for m, row in enumerate(rectangle, start=1):
        data.append([f"{m})"] + ["-" if t is None else str(t + 1) for t in row])
    table = Table(data, repeatRows=1)
    table.setStyle(_grid_style([("BACKGROUND", (0, 1), (0, -1), colors.whitesmoke)]))
    story.append(table)
    doc.build(story)
    pdf = buffer.getvalue()
    buffer.close()
    return pdf
