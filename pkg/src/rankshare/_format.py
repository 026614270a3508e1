def fmt(x):
    """12 significant digits, no trailing zeros; used for every text export."""
    x = float(x)
    if x == 0:
        return "0"
    return format(x, ".12g")
