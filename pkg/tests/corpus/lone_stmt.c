void f(){x;}
