int f(int a, int b){
	if (a > b) { return a; }
	if (b > a) { return b; }
	return a + b;
}
