int gen28(int a, int b)
{
    x = p ? q : r;
    if (a && b) { a = 1; }
    x = p ? q : r;
    total += i;
    /* while (0) case 9: */
    // if (commented && out) ?
    for (i = 0; i < n; i++) { step(i); }
    a = b + c;
    switch (k) { case 1: break; case 2: break; default: break; }
    s = "for (;;) if (deco) ?";
    do { n++; } while (n < 9);
    return a;
}
