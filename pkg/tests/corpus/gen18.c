int gen18(int a, int b)
{
    do { n++; } while (n < 9);
    if (a || b) { c(); } else { d(); }
    try { risky(); } catch (err) { recover(); }
    // if (commented && out) ?
    return a;
}
