/* Bounded copy built on a manual loop instead of the libc helpers. */

int copy_bounded(char *dst, const char *src, int limit) {
    int i = 0;
    while (i < limit - 1 && src[i] != '\0') {
        dst[i] = src[i];
        i = i + 1;
    }
    dst[i] = '\0';
    return i;
}
