#include "gcsim.h"
int main(){return 0;}
