"""Locale-independent numeric formatting for CSV/SVG output."""


def g12(x) -> str:
    """12 significant digits; negative zero prints as 0."""
    x = float(x)
    if x == 0.0:
        return "0"
    return format(x, ".12g")


def csv_lines(header, rows) -> str:
    out = [",".join(header)]
    for row in rows:
        out.append(",".join(v if isinstance(v, str) else g12(v) for v in row))
    return "\n".join(out) + "\n"
