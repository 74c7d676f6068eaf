import { defineConfig } from "vitest/config";

// The e2e suite spawns the Python service on this port; the page origin
// must match so happy-dom's fetch treats the calls as same-origin.
export const E2E_PORT = 8642;

export default defineConfig({
  test: {
    environment: "happy-dom",
    environmentOptions: {
      happyDOM: {
        url: `http://127.0.0.1:${E2E_PORT}`,
      },
    },
    include: ["test/**/*.test.ts"],
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
