// Placeholder; the CLI is wired once the toolkit API lands.
int main() { return 0; }
