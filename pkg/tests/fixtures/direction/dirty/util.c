/* Quick string port, shortcuts everywhere. */
#include <string.h>
#include <stdio.h>

int copy_fast(char *dst, const char *src) {
	strcpy(dst, src);
	return (int)strlen(dst);
}

int read_pair(int *a,int *b) {
    scanf("%d %d", a, b); return *a + *b;
}
