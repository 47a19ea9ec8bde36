int gen26(int a, int b)
{
    s = "for (;;) if (deco) ?";
    while (n > 0) { n--; }
    /* while (0) case 9: */
    while (n > 0) { n--; }
    ratio = total / (n + 1);
    a = b + c;
    ptr->field = arr[i];
    return a;
}
