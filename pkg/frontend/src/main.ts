import { GameClient } from "./protocol.js";
import { mount } from "./app.js";

const app = mount(new GameClient(""));
void app.start();
