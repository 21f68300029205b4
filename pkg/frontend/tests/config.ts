// Shared between the global setup (which spawns the Python service) and
// the end-to-end tests.
export const E2E_PORT = 8917;
export const E2E_BASE = `http://127.0.0.1:${E2E_PORT}`;
