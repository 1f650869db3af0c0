import { defineConfig } from "vitest/config";

// The e2e test talks to a locally spawned game server; giving the DOM
// environment that origin mirrors production, where the server serves the
// UI itself and all requests are same-origin.
export const E2E_PORT = 18288;

export default defineConfig({
  test: {
    environment: "happy-dom",
    environmentOptions: {
      happyDOM: { url: `http://127.0.0.1:${E2E_PORT}` },
    },
    testTimeout: 120_000,
    hookTimeout: 120_000,
  },
});
