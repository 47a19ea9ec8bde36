int f(int a){return a>9?2:a>4?1:0;}
